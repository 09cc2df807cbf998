#pragma once

#include "gapforge/common.hpp"
#include "gapforge/formula.hpp"
#include "gapforge/setsys.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gapforge {

/// Edge constraint. Either an explicit table over the left alphabet, or a
/// literal restriction: left labels are assignments to the left vertex's
/// variables and the right label packs the values of `select` positions
/// (bit b of the right label = bit select[b] of the left label).
struct Projection {
  enum class Kind { table, restriction };
  Kind kind = Kind::table;
  std::vector<std::uint32_t> table;
  std::vector<std::uint32_t> select;
};

struct LcEdge {
  std::uint32_t left = 0;
  std::uint32_t right = 0;
  Projection projection;
};

/// Optional partial-assignment view of a vertex's labels. For a left vertex,
/// label a is the assignment masks[a] to `vars` (bit j = value of vars[j]).
/// For a right vertex, label b is itself the mask over `vars`.
struct VertexLabels {
  std::vector<std::uint32_t> vars;
  std::vector<std::uint64_t> masks;
};

class LabelCoverInstance {
 public:
  LabelCoverInstance() = default;
  LabelCoverInstance(std::vector<std::uint64_t> left_alphabet, std::vector<std::uint64_t> right_alphabet,
                     std::vector<LcEdge> edges, bool allow_empty_alphabets = false);

  std::size_t num_left() const { return left_alphabet_.size(); }
  std::size_t num_right() const { return right_alphabet_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  std::uint64_t left_alphabet(std::size_t u) const { return left_alphabet_.at(u); }
  std::uint64_t right_alphabet(std::size_t v) const { return right_alphabet_.at(v); }
  const std::vector<std::uint64_t>& left_alphabets() const { return left_alphabet_; }
  const std::vector<std::uint64_t>& right_alphabets() const { return right_alphabet_; }
  const std::vector<LcEdge>& edges() const { return edges_; }
  const LcEdge& edge(std::size_t e) const { return edges_.at(e); }

  /// Edge indices incident to right vertex v, sorted by left index.
  const std::vector<std::uint32_t>& right_edges(std::size_t v) const { return right_edges_.at(v); }
  const std::vector<std::uint32_t>& left_edges(std::size_t u) const { return left_edges_.at(u); }

  std::uint32_t project(std::size_t e, std::uint64_t label) const;

  /// Right degree when every right vertex has the same degree, else nullopt.
  std::optional<std::size_t> right_degree() const;
  bool is_bi_regular() const;

  /// True when some alphabet is empty (allowed only on request).
  bool vacuous() const { return vacuous_; }

  std::vector<VertexLabels> left_labels;   ///< empty unless built from a formula
  std::vector<VertexLabels> right_labels;  ///< empty unless built from a formula

 private:
  std::vector<std::uint64_t> left_alphabet_;
  std::vector<std::uint64_t> right_alphabet_;
  std::vector<LcEdge> edges_;
  std::vector<std::vector<std::uint32_t>> right_edges_;
  std::vector<std::vector<std::uint32_t>> left_edges_;
  bool vacuous_ = false;
};

using LeftLabeling = std::vector<std::uint64_t>;

struct FullLabeling {
  LeftLabeling left;
  std::vector<std::uint64_t> right;
};

/// Fraction of edges whose projected left label equals the right label.
Fraction labeling_value(const LabelCoverInstance& L, const FullLabeling& sigma);

/// Fraction of right vertices having two distinct neighbors with equal
/// projected labels. Degree < 2 never counts.
Fraction weak_agreement_value(const LabelCoverInstance& L, const LeftLabeling& sigma);

/// Best right labeling for a fixed left labeling: each right vertex takes its
/// most frequent projected label, smallest label on ties.
FullLabeling extend_optimally(const LabelCoverInstance& L, const LeftLabeling& sigma);

struct LcOptimum {
  FullLabeling labeling;
  Fraction value;
  std::uint64_t enumerated = 0;
};

/// Exhaustive optimum over all left labelings (each extended optimally).
/// Ties go to the lexicographically smallest left labeling.
LcOptimum brute_force_val(const LabelCoverInstance& L, std::uint64_t budget);
LcOptimum brute_force_wval(const LabelCoverInstance& L, std::uint64_t budget);

/// Product of left alphabet sizes, saturating.
std::uint64_t left_labeling_count(const LabelCoverInstance& L);

// ---------------------------------------------------------------------------

class UnsatisfiableSubsetError : public DomainError {
 public:
  explicit UnsatisfiableSubsetError(std::size_t subset);
  std::size_t subset() const noexcept { return subset_; }

 private:
  std::size_t subset_;
};

struct MainReductionOptions {
  std::size_t var_budget = 24;  ///< max |var(T)| per subset
  bool allow_vacuous = false;
};

/// Label Cover instance whose left vertices are the clause subsets of T, whose
/// right vertices are all t-subsets of T (lexicographic), whose left labels are
/// the assignments to var(T_i) satisfying every clause of T_i, and whose
/// constraints are restrictions to the common variables.
LabelCoverInstance build_main_reduction(const CnfFormula& formula, const SetSystem& T, std::size_t t,
                                        const MainReductionOptions& options = {});

/// Labeling induced by a total assignment on a main-reduction instance.
/// Throws DomainError if the assignment does not satisfy some T_i.
FullLabeling restricted_labeling(const LabelCoverInstance& L, const Assignment& phi);

/// Index of `mask` among the labels of left vertex u, or nullopt.
std::optional<std::uint64_t> find_left_label(const LabelCoverInstance& L, std::size_t u, std::uint64_t mask);

// ---------------------------------------------------------------------------

/// C(m)_j = sum_i m_i j_i mod q with m and j read as little-endian base-q
/// digit vectors of length ell.
std::vector<std::uint32_t> hadamard_encode(std::uint64_t message, std::uint64_t q, std::size_t ell);

struct AlphabetReduction {
  LabelCoverInstance instance;
  std::uint64_t q = 0;
  std::size_t ell = 0;
  std::uint64_t block_length = 0;  ///< q^ell
};

/// Replaces each right vertex v by q^ell vertices (v, j), each with alphabet
/// F_q; q is the least prime >= t^2/δ and ell = ceil(log_q max|Σ_v|).
AlphabetReduction reduce_alphabet(const LabelCoverInstance& L, const Fraction& delta, std::uint64_t budget);

/// δ + (1 - δ)/t.
Fraction wval_to_val_bound(const Fraction& delta, std::size_t t);

// ---------------------------------------------------------------------------

struct SoundnessParams {
  Fraction epsilon;
  Fraction delta;
  std::size_t t = 0;
  std::size_t Delta = 0;
  std::size_t k = 0;

  BigReal C;
  BigReal p;
  Fraction mu;
  BigReal gamma;
  BigReal kappa;
  BigReal alpha;
  Fraction beta;
  BigReal rho;
  BigReal eta;
  Fraction d;
  /// p > 1: the values are valid but cannot drive sampling.
  bool theory_only = false;

  /// Symbol -> closed form, in a fixed order.
  std::vector<std::pair<std::string, std::string>> formulas() const;
};

SoundnessParams soundness_params(const Fraction& epsilon, std::size_t Delta, const Fraction& delta, std::size_t t,
                                 std::size_t k);

/// 18 p^2 Δ^2.
Fraction rho_of(const Fraction& p, std::size_t Delta);

std::string to_string(const BigReal& x, int digits = 12);

// ---------------------------------------------------------------------------

/// JSON interchange. Restriction edges carry a "restriction" tag and their
/// vertices carry explicit partial-assignment labels; the select positions are
/// rebuilt on load.
std::string write_label_cover_json(const LabelCoverInstance& L);
LabelCoverInstance parse_label_cover_json(std::string_view text);

}  // namespace gapforge
