#pragma once

#include "gapforge/bitset.hpp"
#include "gapforge/common.hpp"
#include "gapforge/formula.hpp"
#include "gapforge/labelcover.hpp"
#include "gapforge/setsys.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gapforge {

/// A boolean function on an explicit sorted domain.
struct LocalFunction {
  IndexSet domain;
  std::vector<std::uint8_t> values;
};

/// Number of points of the common domain where the two functions differ.
std::size_t disagr(const LocalFunction& f1, const LocalFunction& f2);

/// One boolean function per set of a set system.
class FunctionCollection {
 public:
  FunctionCollection() = default;
  /// values[i] is parallel to system.set(i).
  FunctionCollection(SetSystem system, std::vector<std::vector<std::uint8_t>> values);

  /// f_S = g restricted to S for every set.
  static FunctionCollection restrictions_of(const SetSystem& system, const std::vector<std::uint8_t>& g);

  const SetSystem& system() const { return system_; }
  std::size_t k() const { return system_.num_sets(); }
  std::size_t n() const { return system_.universe_size(); }

  const Bitset& domain(std::size_t i) const { return domain_.at(i); }
  /// Bit u is f_i(u); zero outside the domain.
  const Bitset& values(std::size_t i) const { return value_.at(i); }
  LocalFunction function(std::size_t i) const;

  /// Points of S_i ∩ S_j where f_i and f_j differ.
  Bitset disagreement(std::size_t i, std::size_t j) const;

  FunctionCollection subcollection(const IndexSet& indices) const;

 private:
  SetSystem system_;
  std::vector<Bitset> domain_;
  std::vector<Bitset> value_;
};

std::size_t disagr(const FunctionCollection& F, std::size_t i, std::size_t j);

/// "funcs <n> <k>", then one line per set: "<sorted indices> : <bit string>".
std::string write_funcs(const FunctionCollection& F);
FunctionCollection parse_funcs(std::string_view text);

/// Are f_i and f_j equal on S_i ∩ S_j ∩ (intersection of the sets in others)?
bool consistent_on(const FunctionCollection& F, std::size_t i, std::size_t j, const IndexSet& others);

struct AgreementValue {
  std::optional<Fraction> exact;
  double value = 0.0;
  bool estimated = false;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Probability over unordered t-subsets that some two of their functions
/// agree on the common intersection of all t sets.
AgreementValue t_wagr(const FunctionCollection& F, std::size_t t, std::uint64_t budget);
AgreementValue t_wagr(const FunctionCollection& F, std::size_t t, const MonteCarlo& mc);

/// How the empty subcollection (ℓ = 0) is treated.
enum class ZeroLevel {
  /// Every pair is consistent, as a convention.
  convention,
  /// The pair must agree on S_i ∩ S_j, i.e. the empty intersection is taken
  /// literally.
  literal,
};

/// Fraction of ℓ-subsets of the other k-2 sets on which f_i and f_j are
/// consistent.
Fraction pair_consistency(const FunctionCollection& F, std::size_t i, std::size_t j, std::size_t ell,
                          std::uint64_t budget, ZeroLevel zero = ZeroLevel::convention);

using Edge = std::pair<std::uint32_t, std::uint32_t>;

class RedBlueGraph {
 public:
  RedBlueGraph() = default;
  /// Edges are unordered; red and blue must be disjoint and loop-free.
  RedBlueGraph(std::size_t k, const std::vector<Edge>& blue, const std::vector<Edge>& red);

  std::size_t k() const { return blue_adj_.size(); }
  const std::vector<Edge>& blue_edges() const { return blue_; }
  const std::vector<Edge>& red_edges() const { return red_; }
  bool is_blue(std::size_t u, std::size_t v) const { return blue_adj_[u].test(v); }
  bool is_red(std::size_t u, std::size_t v) const { return red_adj_[u].test(v); }
  const Bitset& blue_neighbors(std::size_t u) const { return blue_adj_[u]; }
  const Bitset& red_neighbors(std::size_t u) const { return red_adj_[u]; }

  /// True when edge membership came from Monte-Carlo consistency estimates.
  bool estimated = false;

 private:
  std::vector<Edge> blue_;
  std::vector<Edge> red_;
  std::vector<Bitset> blue_adj_;
  std::vector<Bitset> red_adj_;
};

class RedBlueOverlap : public std::runtime_error {
 public:
  RedBlueOverlap(std::vector<Edge> overlap);
  const std::vector<Edge>& overlap() const noexcept { return overlap_; }

 private:
  std::vector<Edge> overlap_;
};

struct TwoLevelOptions {
  std::uint64_t budget = kDefaultBudget;
  ZeroLevel zero = ZeroLevel::literal;
  /// Used when exact enumeration exceeds the budget.
  std::uint64_t mc_trials = 2000;
  std::uint64_t seed = 0;
};

/// Blue: (t-2, β)-consistent pairs. Red: pairs that are not (2t-3,
/// α)-consistent. Throws RedBlueOverlap if some pair is both.
RedBlueGraph build_two_level_graph(const FunctionCollection& F, const Fraction& alpha, const Fraction& beta,
                                   std::size_t t, const TwoLevelOptions& options = {});

struct RbWitness {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  std::size_t common_blue = 0;
};

struct RbTransitivity {
  bool holds = true;
  std::optional<RbWitness> witness;  ///< first violating red edge
};

/// Every red edge's endpoints have fewer than h common blue neighbors.
RbTransitivity check_rb_transitive(const RedBlueGraph& G, std::uint64_t h);

enum class SearchMode { exact, greedy };

struct NonRedSubgraph {
  IndexSet vertices;
  std::uint64_t non_red_pairs = 0;  ///< ordered pairs in B×B, diagonal included
  Fraction density;                 ///< non_red_pairs / |B|^2
  SearchMode mode = SearchMode::exact;
  std::uint64_t enumerated = 0;
};

std::uint64_t non_red_pairs(const RedBlueGraph& G, const IndexSet& B);

/// Exact: the d-subset of maximum non-red density (min-lex on ties). Greedy:
/// repeatedly delete the vertex with the most red edges inside the remaining
/// set (lowest index on ties) until d remain.
NonRedSubgraph find_non_red_subgraph(const RedBlueGraph& G, std::size_t d, SearchMode mode, std::uint64_t budget);

struct ZetaCheck {
  Fraction zeta;
  Fraction kappa;        ///< Pr over ordered pairs with replacement of disagr > ζn
  Fraction rhs_squared;  ///< n^2 (ρκ + ζ)
  double rhs = 0.0;      ///< n sqrt(ρκ + ζ)
  bool holds = false;    ///< mean^2 <= rhs_squared
  bool upper_holds = false;  ///< pair mean <= (κρ + ζ) n
};

struct MajorityResult {
  std::vector<std::uint8_t> g;
  Fraction mean_disagr;  ///< E_S[disagr(g, f_S)]
  Fraction pair_mean;    ///< E_{S1,S2}[disagr(f_S1, f_S2)], independent draws
  Fraction rho;          ///< max |S_i ∩ S_j| / n over distinct pairs
  bool power_mean_holds = false;  ///< pair_mean >= mean_disagr^2 / n
  std::vector<ZetaCheck> checks;
};

/// ζ_j = jρ/9 for j = 0..9.
std::vector<Fraction> default_zeta_sweep(const Fraction& rho);

/// Pointwise majority over the subcollection (ties and uncovered points -> 0),
/// with the disagreement bound evaluated at each ζ. With no zetas supplied the
/// default sweep is used; rho defaults to the measured value.
MajorityResult majority_decode(const FunctionCollection& F, const IndexSet& subcollection,
                               std::vector<Fraction> zetas = {}, std::optional<Fraction> rho = std::nullopt);

struct DecodeParams {
  Fraction alpha;
  /// Measured from the decoded subcollection when unset.
  std::optional<Fraction> eta;
  std::optional<Fraction> rho;
  bool alpha_overridden = false;
  SearchMode mode = SearchMode::exact;
  std::uint64_t budget = kDefaultBudget;
  ZeroLevel zero = ZeroLevel::literal;
  std::uint64_t seed = 0;
  /// Sampling density used to default γ in the assignment decoder.
  std::optional<Fraction> gamma;

  /// α from the closed-form bundle (astronomically small).
  static DecodeParams from(const SoundnessParams& params);
};

struct AgreementReport {
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t t = 0;
  Fraction delta;
  Fraction alpha;
  bool alpha_overridden = false;
  Fraction beta;
  bool k_large_enough = false;  ///< k >= 10t/α

  std::size_t blue_count = 0;
  std::size_t red_count = 0;
  Fraction blue_threshold;  ///< (δ/4t^2) k^2
  bool blue_ok = false;

  std::uint64_t h = 0;  ///< ceil((2α/β^2) k)
  bool rb_transitive = false;

  std::size_t d = 0;
  SearchMode mode = SearchMode::exact;
  Fraction density;
  Fraction density_bound;  ///< 1 - 2048 t^8 α / δ^4
  bool density_ok = false;

  Fraction rho;
  Fraction eta;
  Fraction mean_disagr;
  Fraction final_bound_squared;  ///< n^2 ρ (2048 t^8 α / δ^4 + η)
  double final_bound = 0.0;
  bool final_ok = false;

  bool estimated = false;
  bool proof_path_failed = false;
};

struct AgreementDecode {
  IndexSet subcollection;
  std::vector<std::uint8_t> g;
  AgreementReport report;
};

/// Two-level graph, almost-non-red subgraph, then majority decoding. Refuses
/// (DomainError) when δ <= 0 or the measured t-wise agreement is below δ.
AgreementDecode agreement_decode(const FunctionCollection& F, std::size_t t, const Fraction& delta,
                                 const DecodeParams& params);

/// View of a main-reduction left labeling as functions over the variables:
/// set i is var(T_i) (0-based), function i is the label's assignment.
FunctionCollection labeling_to_functions(const LabelCoverInstance& L, const LeftLabeling& sigma,
                                         std::size_t num_vars);

struct AssignmentReport {
  AgreementReport agreement;
  Fraction value;  ///< clause_value(Φ, ψ)
  Fraction delta;  ///< measured t-wise agreement of the labeling
  Fraction gamma;
  Fraction mu;     ///< failing fraction of clauses at γ over the decoded subsets
  Fraction nu;     ///< mean disagreement / n
  std::size_t Delta = 0;
  Fraction lemma_bound;  ///< 1 - μ - 3νΔ/γ
  bool lemma_ok = false;
};

struct AssignmentDecode {
  Assignment psi;
  AssignmentReport report;
};

AssignmentDecode decode_assignment(const CnfFormula& formula, const SetSystem& T, const LabelCoverInstance& L,
                                   const LeftLabeling& sigma, const DecodeParams& params);

/// Exact rational value of a finite binary float.
Fraction to_fraction(const BigReal& x);

/// Exact test of a^2 <= b for rationals, used for bounds of the form
/// a <= sqrt(b).
inline bool sq_leq(const Fraction& a, const Fraction& b) { return a < 0 || a * a <= b; }

}  // namespace gapforge
