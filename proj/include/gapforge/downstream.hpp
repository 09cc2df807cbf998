#pragma once

#include "gapforge/common.hpp"
#include "gapforge/labelcover.hpp"
#include "gapforge/setsys.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gapforge {

/// Universe [0, universe), a list of subsets, and the parameter k.
class CoverageInstance {
 public:
  CoverageInstance() = default;
  CoverageInstance(std::size_t universe, std::vector<IndexSet> sets, std::size_t k);

  std::size_t universe() const { return universe_; }
  std::size_t num_sets() const { return sets_.size(); }
  const std::vector<IndexSet>& sets() const { return sets_; }
  const IndexSet& set(std::size_t i) const { return sets_.at(i); }
  std::size_t k() const { return k_; }

  /// Elements that lie in no set.
  IndexSet uncovered_elements() const;

  friend bool operator==(const CoverageInstance&, const CoverageInstance&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<IndexSet> sets_;
  std::size_t k_ = 1;
};

/// "cov <|U'|> <|S|> <k>" then one element list per set.
std::string write_coverage(const CoverageInstance& I);
CoverageInstance parse_coverage(std::string_view text);

/// The ground set [t]^Σ of all functions Σ -> [t], in lexicographic order with
/// label 0 as the most significant digit. part(a, j) = {f : f(a) = j}.
class PartitionSystem {
 public:
  PartitionSystem(std::size_t labels, std::size_t t, std::uint64_t budget);

  std::size_t labels() const { return labels_; }
  std::size_t t() const { return t_; }
  std::uint64_t size() const { return size_; }

  /// Value f(a) of the element with index e.
  std::size_t digit(std::uint64_t e, std::size_t a) const;
  bool in_part(std::uint64_t e, std::size_t a, std::size_t j) const { return digit(e, a) == j; }
  IndexSet part(std::size_t a, std::size_t j) const;

 private:
  std::size_t labels_;
  std::size_t t_;
  std::uint64_t size_;
  std::vector<std::uint64_t> weight_;  ///< t^(labels-1-a)
};

/// Number of ground elements in none of the given parts (each a (label, part)
/// pair).
std::uint64_t uncovered_by_parts(const PartitionSystem& P, const std::vector<std::pair<std::size_t, std::size_t>>& parts);

struct FeigeReduction {
  CoverageInstance instance;
  /// Set s corresponds to left vertex set_owner[s].first with label .second.
  std::vector<std::pair<std::uint32_t, std::uint64_t>> set_owner;
  /// Offset of right vertex v's ground set inside U'.
  std::vector<std::uint64_t> offsets;
  std::size_t t = 0;
};

/// One [t]^Σ_v ground set per right vertex; set (u, a) takes, for each right
/// neighbor v, part(π_(u,v)(a), rank of u among v's neighbors). k = |U|.
FeigeReduction feige_coverage_reduction(const LabelCoverInstance& L, std::uint64_t budget);

/// The sets {(u, σ_u)} of a left labeling.
IndexSet labeling_sets(const FeigeReduction& R, const LeftLabeling& sigma);

/// Clients, facilities, a symmetric distance table over clients followed by
/// facilities, and the parameter k.
class ClusteringInstance {
 public:
  ClusteringInstance() = default;
  /// Validates symmetry, zero diagonal and (when `check_triangle`) the
  /// triangle inequality over all triples.
  ClusteringInstance(std::size_t clients, std::size_t facilities, std::vector<std::uint32_t> distances, std::size_t k,
                     bool check_triangle = true);

  std::size_t clients() const { return clients_; }
  std::size_t facilities() const { return facilities_; }
  std::size_t points() const { return clients_ + facilities_; }
  std::size_t k() const { return k_; }
  std::uint32_t d(std::size_t a, std::size_t b) const { return dist_[a * points() + b]; }
  /// Distance from client c to facility f.
  std::uint32_t client_to_facility(std::size_t c, std::size_t f) const { return d(c, clients_ + f); }
  const std::vector<std::uint32_t>& distances() const { return dist_; }

  /// True when some client lay in no set of the source coverage instance.
  bool degenerate = false;

 private:
  std::size_t clients_ = 0;
  std::size_t facilities_ = 0;
  std::vector<std::uint32_t> dist_;
  std::size_t k_ = 1;
};

/// Exhaustive triangle inequality audit; returns the first violating triple.
std::optional<std::array<std::size_t, 3>> find_triangle_violation(const ClusteringInstance& I);

/// "clustering <clients> <facilities> <k>" then the full distance matrix.
std::string write_clustering(const ClusteringInstance& I);
ClusteringInstance parse_clustering(std::string_view text);

/// d(u, S) = 1 if u ∈ S else 3; all other distinct pairs at distance 2.
/// Refuses when the full distance matrix has more than `budget` cells.
ClusteringInstance guha_khuller_reduction(const CoverageInstance& I, std::uint64_t budget = kDefaultBudget);

/// Generator matrix over F_2 with target y.
struct CodeInstance {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::uint8_t>> A;
  std::vector<std::uint8_t> y;
  std::size_t k = 1;
};

/// Integer generator matrix with target y and ℓ_p^p objective.
struct LatticeInstance {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::int64_t>> A;
  std::vector<std::int64_t> y;
  unsigned p = 1;
  std::size_t k = 1;
};

/// ‖Ax - y‖_0 over F_2.
std::uint64_t ncp_cost(const CodeInstance& I, const std::vector<std::uint8_t>& x);
/// ‖Ax - y‖_p^p.
BigInt cvp_cost(const LatticeInstance& I, const std::vector<std::int64_t>& x);

/// L copies of every element-incidence row (target 1), then one identity row
/// per set (target 0). Requires L >= threshold + 1.
CodeInstance abss_ncp_reduction(const CoverageInstance& I, std::size_t threshold, std::size_t multiplicity);
LatticeInstance abss_cvp_reduction(const CoverageInstance& I, std::size_t threshold, std::size_t multiplicity,
                                   unsigned p);

/// "code <rows> <cols> <k>", row-major 0/1 rows, then "y ..." line.
std::string write_code(const CodeInstance& I);
CodeInstance parse_code(std::string_view text);
/// "lattice <rows> <cols> <k> <p>", row-major integer rows, then "y ..." line.
std::string write_lattice(const LatticeInstance& I);
LatticeInstance parse_lattice(std::string_view text);

}  // namespace gapforge
