#pragma once

#include "gapforge/bitset.hpp"
#include "gapforge/common.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gapforge {

using IndexSet = std::vector<std::uint32_t>;

/// A universe [0, universe_size) and an ordered list of subsets.
class SetSystem {
 public:
  SetSystem() = default;
  /// Each set is sorted on construction; duplicates and out-of-range indices
  /// are rejected.
  SetSystem(std::size_t universe_size, std::vector<IndexSet> sets);

  std::size_t universe_size() const { return universe_size_; }
  std::size_t num_sets() const { return sets_.size(); }
  const std::vector<IndexSet>& sets() const { return sets_; }
  const IndexSet& set(std::size_t i) const { return sets_.at(i); }

  Bitset membership(std::size_t i) const;
  std::vector<Bitset> memberships() const;

  friend bool operator==(const SetSystem&, const SetSystem&) = default;

 private:
  std::size_t universe_size_ = 0;
  std::vector<IndexSet> sets_;
};

/// "setsys <universe_size> <k>" then one sorted index list per line.
std::string write_setsys(const SetSystem& system);
SetSystem parse_setsys(std::string_view text);

/// Each (element, set) membership is an independent Bernoulli(p) draw, sets in
/// order and elements in order within a set.
SetSystem sample_random_subsets(std::size_t universe_size, std::size_t k, const Fraction& p, std::uint64_t seed);

/// (S \ {S_i, S_j}) restricted to S_i ∩ S_j, relabelled onto [0, |S_i ∩ S_j|).
SetSystem restrict_to_pair(const SetSystem& system, std::size_t i, std::size_t j);

struct UniformityResult {
  bool uniform = false;
  IndexSet failing;  ///< elements in fewer than a γ fraction of the sets
};

/// (γ, μ)-uniformity: at least (1-μ)|U| elements lie in at least a γ fraction
/// of the sets.
UniformityResult is_uniform(const SetSystem& system, const Fraction& gamma, const Fraction& mu);

enum class CheckMode { exact, heuristic };

enum class DisperserVerdictKind { certified_yes, violated, inconclusive };
std::string_view to_string(DisperserVerdictKind kind);

struct DisperserVerdict {
  DisperserVerdictKind kind = DisperserVerdictKind::inconclusive;
  /// For `violated`: r distinct subcollections (set-index lists).
  std::vector<IndexSet> witness;
  std::size_t uncovered = 0;  ///< |U \ union of intersections| for the witness
  std::uint64_t combinations_checked = 0;
};

/// All nonempty subcollections of size at most ell, ordered by size and then
/// lexicographically.
std::vector<IndexSet> small_subcollections(std::size_t k, std::size_t ell);

/// (r, ell, η)-strong intersection disperser check. Exact mode enumerates all
/// r-combinations of nonempty subcollections of size <= ell (refusing above
/// `budget`) and returns the lexicographically first violation. Heuristic mode
/// greedily assembles a low-coverage r-tuple and can only refute.
DisperserVerdict is_strong_intersection_disperser(const SetSystem& system, std::size_t r, std::size_t ell,
                                                  const Fraction& eta, CheckMode mode, std::uint64_t budget);

/// Largest |S_i ∩ S_j| over i < j.
std::size_t pairwise_intersection_max(const SetSystem& system);
std::size_t max_set_size(const SetSystem& system);

// ---------------------------------------------------------------------------
// Monotone DNFs

/// OR of ANDs over variables [0, num_vars). Terms are sorted, pairwise
/// distinct, and nonempty unless the always-true empty term is allowed.
class MonotoneDnf {
 public:
  MonotoneDnf() = default;
  MonotoneDnf(std::size_t num_vars, std::vector<IndexSet> terms, bool allow_empty_term = false);

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<IndexSet>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::size_t width() const { return width_; }

  bool evaluate(const std::vector<std::uint8_t>& x) const;
  /// Bitmask form (num_vars <= 64): bit i of each mask is variable i.
  std::vector<std::uint64_t> term_masks() const;

 private:
  std::size_t num_vars_ = 0;
  std::vector<IndexSet> terms_;
  std::size_t width_ = 0;
};

std::string write_dnf(const MonotoneDnf& f);
MonotoneDnf parse_dnf(std::string_view text);

/// One term per subcollection. Throws DomainError on duplicates.
MonotoneDnf dnf_from_subcollections(std::size_t k, const std::vector<IndexSet>& subcollections);

/// Number of falsifying assignments of each Hamming weight (index = weight).
/// Exhaustive over 2^k inputs via a superset-closure sweep.
std::vector<std::uint64_t> dnf_false_counts(const MonotoneDnf& f, std::uint64_t budget);

struct ProbabilityResult {
  std::optional<Fraction> exact;  ///< set in exact mode
  double value = 0.0;
  bool estimated = false;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

struct MonteCarlo {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Pr_{x ~ Bernoulli(p)^k}[f(x) = 0], exactly.
ProbabilityResult dnf_false_prob(const MonotoneDnf& f, const Fraction& p, std::uint64_t budget);
/// Seeded Monte-Carlo estimate; trial i draws from mix_seed(seed, i).
ProbabilityResult dnf_false_prob(const MonotoneDnf& f, const Fraction& p, const MonteCarlo& mc);

// ---------------------------------------------------------------------------

struct SampledCheckParams {
  std::size_t r = 1;
  std::size_t ell = 1;
  Fraction eta = 0;
  Fraction mu = 0;
  CheckMode mode = CheckMode::exact;
};

struct PairDisperserVerdict {
  std::size_t i = 0;
  std::size_t j = 0;
  DisperserVerdict verdict;
};

struct SampledPropertiesReport {
  std::size_t max_size = 0;
  Fraction size_bound;  ///< 2 p |U|
  bool size_ok = false;
  std::size_t max_pairwise = 0;
  Fraction pairwise_bound;  ///< 18 p^2 Δ^2 n
  bool pairwise_ok = false;
  Fraction gamma;  ///< p / 2
  UniformityResult uniformity;
  std::vector<PairDisperserVerdict> dispersers;
};

/// Checks the random-collection properties of a sampled system in one pass.
SampledPropertiesReport check_sampled_properties(const SetSystem& system, const Fraction& p, std::size_t delta,
                                                 std::size_t n, const SampledCheckParams& params,
                                                 std::uint64_t budget);

}  // namespace gapforge
