#include "gapforge/labelcover.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace gapforge {

LabelCoverInstance::LabelCoverInstance(std::vector<std::uint64_t> left_alphabet,
                                       std::vector<std::uint64_t> right_alphabet, std::vector<LcEdge> edges,
                                       bool allow_empty_alphabets)
    : left_alphabet_(std::move(left_alphabet)),
      right_alphabet_(std::move(right_alphabet)),
      edges_(std::move(edges)),
      right_edges_(right_alphabet_.size()),
      left_edges_(left_alphabet_.size()) {
  for (auto a : left_alphabet_) vacuous_ |= a == 0;
  for (auto a : right_alphabet_) vacuous_ |= a == 0;
  if (vacuous_ && !allow_empty_alphabets) throw DomainError("LabelCoverInstance: empty alphabet");
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const LcEdge& edge = edges_[e];
    if (edge.left >= left_alphabet_.size() || edge.right >= right_alphabet_.size())
      throw DomainError("LabelCoverInstance: edge endpoint out of range");
    const Projection& pr = edge.projection;
    if (pr.kind == Projection::Kind::table) {
      if (pr.table.size() != left_alphabet_[edge.left])
        throw DomainError("LabelCoverInstance: projection table not total on the left alphabet");
      for (auto b : pr.table)
        if (b >= right_alphabet_[edge.right]) throw DomainError("LabelCoverInstance: projection leaves right alphabet");
    } else {
      if (pr.select.size() >= 64 || (std::uint64_t{1} << pr.select.size()) != right_alphabet_[edge.right])
        throw DomainError("LabelCoverInstance: restriction width does not match right alphabet");
    }
    right_edges_[edge.right].push_back(static_cast<std::uint32_t>(e));
    left_edges_[edge.left].push_back(static_cast<std::uint32_t>(e));
  }
  for (auto& list : right_edges_) {
    std::stable_sort(list.begin(), list.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return edges_[a].left < edges_[b].left; });
    for (std::size_t i = 1; i < list.size(); ++i)
      if (edges_[list[i]].left == edges_[list[i - 1]].left)
        throw DomainError("LabelCoverInstance: parallel edges");
  }
}

std::uint32_t LabelCoverInstance::project(std::size_t e, std::uint64_t label) const {
  const LcEdge& edge = edges_[e];
  if (edge.projection.kind == Projection::Kind::table) return edge.projection.table[label];
  const std::uint64_t mask = left_labels[edge.left].masks[label];
  std::uint32_t out = 0;
  const auto& sel = edge.projection.select;
  for (std::size_t b = 0; b < sel.size(); ++b) out |= static_cast<std::uint32_t>((mask >> sel[b]) & 1) << b;
  return out;
}

std::optional<std::size_t> LabelCoverInstance::right_degree() const {
  if (right_edges_.empty()) return std::nullopt;
  const std::size_t d = right_edges_[0].size();
  for (const auto& list : right_edges_)
    if (list.size() != d) return std::nullopt;
  return d;
}

bool LabelCoverInstance::is_bi_regular() const {
  if (!right_degree()) return false;
  if (left_edges_.empty()) return false;
  const std::size_t d = left_edges_[0].size();
  for (const auto& list : left_edges_)
    if (list.size() != d) return false;
  return true;
}

namespace {

void check_left(const LabelCoverInstance& L, const LeftLabeling& sigma) {
  if (sigma.size() != L.num_left()) throw DomainError("left labeling has the wrong length");
  for (std::size_t u = 0; u < sigma.size(); ++u)
    if (sigma[u] >= L.left_alphabet(u)) throw DomainError("left label out of range");
}

/// Projected labels of v's neighbors, sorted.
void projected(const LabelCoverInstance& L, const LeftLabeling& sigma, std::size_t v, std::vector<std::uint32_t>& out) {
  out.clear();
  for (auto e : L.right_edges(v)) out.push_back(L.project(e, sigma[L.edge(e).left]));
  std::sort(out.begin(), out.end());
}

/// (plurality count, smallest plurality label) of a sorted list.
std::pair<std::size_t, std::uint32_t> plurality(const std::vector<std::uint32_t>& sorted) {
  std::size_t best = 0;
  std::uint32_t label = 0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (j - i > best) {
      best = j - i;
      label = sorted[i];
    }
    i = j;
  }
  return {best, label};
}

bool has_repeat(const std::vector<std::uint32_t>& sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

std::uint64_t score_val(const LabelCoverInstance& L, const LeftLabeling& sigma, std::vector<std::uint32_t>& scratch) {
  std::uint64_t s = 0;
  for (std::size_t v = 0; v < L.num_right(); ++v) {
    projected(L, sigma, v, scratch);
    s += plurality(scratch).first;
  }
  return s;
}

std::uint64_t score_wval(const LabelCoverInstance& L, const LeftLabeling& sigma, std::vector<std::uint32_t>& scratch) {
  std::uint64_t s = 0;
  for (std::size_t v = 0; v < L.num_right(); ++v) {
    projected(L, sigma, v, scratch);
    s += has_repeat(scratch) ? 1 : 0;
  }
  return s;
}

LeftLabeling unrank_labeling(const LabelCoverInstance& L, std::uint64_t index) {
  LeftLabeling sigma(L.num_left());
  for (std::size_t u = L.num_left(); u-- > 0;) {
    sigma[u] = index % L.left_alphabet(u);
    index /= L.left_alphabet(u);
  }
  return sigma;
}

bool advance(const LabelCoverInstance& L, LeftLabeling& sigma) {
  for (std::size_t u = L.num_left(); u-- > 0;) {
    if (++sigma[u] < L.left_alphabet(u)) return true;
    sigma[u] = 0;
  }
  return false;
}

template <typename Score>
std::pair<std::uint64_t, std::uint64_t> best_labeling(const LabelCoverInstance& L, std::uint64_t budget,
                                                      std::string_view what, Score score) {
  if (L.vacuous()) throw DomainError(std::string(what) + ": instance has an empty alphabet");
  const std::uint64_t total = left_labeling_count(L);
  require_budget(what, total, budget);
  std::uint64_t best_score = 0;
  std::uint64_t best_index = kSaturated;
  const std::uint64_t chunk = std::max<std::uint64_t>(1, total / 256);
  const auto chunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);
#pragma omp parallel
  {
    std::vector<std::uint32_t> scratch;
    std::uint64_t local_score = 0;
    std::uint64_t local_index = kSaturated;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      LeftLabeling sigma = unrank_labeling(L, begin);
      for (std::uint64_t idx = begin; idx < end; ++idx) {
        const std::uint64_t s = score(L, sigma, scratch);
        if (local_index == kSaturated || s > local_score || (s == local_score && idx < local_index)) {
          local_score = s;
          local_index = idx;
        }
        advance(L, sigma);
      }
    }
#pragma omp critical(gapforge_lc_merge)
    if (local_index != kSaturated &&
        (best_index == kSaturated || local_score > best_score || (local_score == best_score && local_index < best_index))) {
      best_score = local_score;
      best_index = local_index;
    }
  }
  return {best_score, best_index};
}

}  // namespace

Fraction labeling_value(const LabelCoverInstance& L, const FullLabeling& sigma) {
  check_left(L, sigma.left);
  if (sigma.right.size() != L.num_right()) throw DomainError("labeling_value: right labeling has the wrong length");
  for (std::size_t v = 0; v < sigma.right.size(); ++v)
    if (sigma.right[v] >= L.right_alphabet(v)) throw DomainError("labeling_value: right label out of range");
  if (L.num_edges() == 0) throw DomainError("labeling_value: instance has no edges");
  std::uint64_t sat = 0;
  for (std::size_t e = 0; e < L.num_edges(); ++e) {
    const LcEdge& edge = L.edge(e);
    if (L.project(e, sigma.left[edge.left]) == sigma.right[edge.right]) ++sat;
  }
  return Fraction(sat, L.num_edges());
}

Fraction weak_agreement_value(const LabelCoverInstance& L, const LeftLabeling& sigma) {
  check_left(L, sigma);
  if (L.num_right() == 0) throw DomainError("weak_agreement_value: no right vertices");
  std::vector<std::uint32_t> scratch;
  return Fraction(score_wval(L, sigma, scratch), L.num_right());
}

FullLabeling extend_optimally(const LabelCoverInstance& L, const LeftLabeling& sigma) {
  check_left(L, sigma);
  FullLabeling out{sigma, std::vector<std::uint64_t>(L.num_right(), 0)};
  std::vector<std::uint32_t> scratch;
  for (std::size_t v = 0; v < L.num_right(); ++v) {
    projected(L, sigma, v, scratch);
    out.right[v] = plurality(scratch).second;
  }
  return out;
}

std::uint64_t left_labeling_count(const LabelCoverInstance& L) {
  std::uint64_t total = 1;
  for (auto a : L.left_alphabets()) total = sat_mul(total, a);
  return total;
}

LcOptimum brute_force_val(const LabelCoverInstance& L, std::uint64_t budget) {
  if (L.num_edges() == 0) throw DomainError("brute_force_val: instance has no edges");
  auto [score, index] = best_labeling(L, budget, "brute_force_val", score_val);
  LcOptimum out;
  out.labeling = extend_optimally(L, unrank_labeling(L, index));
  out.value = Fraction(score, L.num_edges());
  out.enumerated = left_labeling_count(L);
  return out;
}

LcOptimum brute_force_wval(const LabelCoverInstance& L, std::uint64_t budget) {
  if (L.num_right() == 0) throw DomainError("brute_force_wval: no right vertices");
  auto [score, index] = best_labeling(L, budget, "brute_force_wval", score_wval);
  LcOptimum out;
  out.labeling = extend_optimally(L, unrank_labeling(L, index));
  out.value = Fraction(score, L.num_right());
  out.enumerated = left_labeling_count(L);
  return out;
}

// ---------------------------------------------------------------------------

UnsatisfiableSubsetError::UnsatisfiableSubsetError(std::size_t subset)
    : DomainError("subset T_" + std::to_string(subset) + " has no satisfying local assignment"), subset_(subset) {}

namespace {

struct LocalClause {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;
};

/// All assignments to `vars` satisfying every clause, as sorted masks.
std::vector<std::uint64_t> satisfying_local(const CnfFormula& formula, const IndexSet& clauses,
                                            const std::vector<std::uint32_t>& vars) {
  // Clauses are bucketed by their highest local position so each is checked
  // as soon as it is fully assigned.
  std::vector<std::vector<LocalClause>> by_last(vars.size());
  for (auto c : clauses) {
    LocalClause lc;
    std::size_t last = 0;
    for (const Literal& lit : formula.clause(c)) {
      const auto pos = static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), lit.var) - vars.begin());
      (lit.negated ? lc.neg : lc.pos) |= std::uint64_t{1} << pos;
      last = std::max(last, pos);
    }
    by_last[last].push_back(lc);
  }
  std::vector<std::uint64_t> out;
  const std::size_t n = vars.size();
  if (n == 0) return {0};
  // Iterative DFS over bit positions 0..n-1.
  std::vector<std::uint8_t> tried(n, 0);
  std::uint64_t mask = 0;
  std::size_t depth = 0;
  while (true) {
    if (tried[depth] == 2) {
      tried[depth] = 0;
      mask &= ~(std::uint64_t{1} << depth);
      if (depth == 0) break;
      --depth;
      continue;
    }
    const std::uint64_t bit = std::uint64_t{1} << depth;
    if (tried[depth] == 0) mask &= ~bit;
    else mask |= bit;
    ++tried[depth];
    bool ok = true;
    for (const auto& lc : by_last[depth])
      if (!((lc.pos & mask) || (lc.neg & ~mask))) {
        ok = false;
        break;
      }
    if (!ok) continue;
    if (depth + 1 == n) {
      out.push_back(mask);
      continue;
    }
    ++depth;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

LabelCoverInstance build_main_reduction(const CnfFormula& formula, const SetSystem& T, std::size_t t,
                                        const MainReductionOptions& options) {
  if (t < 2) throw DomainError("build_main_reduction: t must be at least 2");
  const std::size_t k = T.num_sets();
  if (k < t) throw DomainError("build_main_reduction: need |T| >= t");
  if (T.universe_size() != formula.num_clauses())
    throw DomainError("build_main_reduction: T must be a system over the clause set");
  const std::uint64_t right_count = binomial(k, t);
  require_budget("build_main_reduction: right vertices", right_count, kDefaultBudget);

  std::vector<VertexLabels> left(k);
  std::vector<std::uint64_t> left_alpha(k);
  bool vacuous = false;
  for (std::size_t i = 0; i < k; ++i) {
    left[i].vars = vars_of(formula, T.set(i));
    if (left[i].vars.size() > options.var_budget || left[i].vars.size() >= 64)
      throw BudgetExceeded("build_main_reduction: |var(T_" + std::to_string(i) + ")|", left[i].vars.size(),
                           options.var_budget);
    left[i].masks = satisfying_local(formula, T.set(i), left[i].vars);
    left_alpha[i] = left[i].masks.size();
    if (left[i].masks.empty()) {
      if (!options.allow_vacuous) throw UnsatisfiableSubsetError(i);
      vacuous = true;
    }
  }

  std::vector<VertexLabels> right;
  std::vector<std::uint64_t> right_alpha;
  std::vector<LcEdge> edges;
  right.reserve(right_count);
  std::vector<std::uint32_t> comb(t);
  for (std::size_t i = 0; i < t; ++i) comb[i] = static_cast<std::uint32_t>(i);
  do {
    std::vector<std::uint32_t> common = left[comb[0]].vars;
    for (std::size_t x = 1; x < t; ++x) {
      std::vector<std::uint32_t> next;
      const auto& other = left[comb[x]].vars;
      std::set_intersection(common.begin(), common.end(), other.begin(), other.end(), std::back_inserter(next));
      common = std::move(next);
    }
    const auto v = static_cast<std::uint32_t>(right.size());
    for (auto u : comb) {
      LcEdge edge{u, v, {Projection::Kind::restriction, {}, {}}};
      const auto& lv = left[u].vars;
      for (auto var : common)
        edge.projection.select.push_back(
            static_cast<std::uint32_t>(std::lower_bound(lv.begin(), lv.end(), var) - lv.begin()));
      edges.push_back(std::move(edge));
    }
    right_alpha.push_back(std::uint64_t{1} << common.size());
    right.push_back({std::move(common), {}});
  } while (next_combination(comb, static_cast<std::uint32_t>(k)));

  LabelCoverInstance L(std::move(left_alpha), std::move(right_alpha), std::move(edges), vacuous);
  L.left_labels = std::move(left);
  L.right_labels = std::move(right);
  return L;
}

std::optional<std::uint64_t> find_left_label(const LabelCoverInstance& L, std::size_t u, std::uint64_t mask) {
  const auto& masks = L.left_labels.at(u).masks;
  auto it = std::lower_bound(masks.begin(), masks.end(), mask);
  if (it == masks.end() || *it != mask) return std::nullopt;
  return static_cast<std::uint64_t>(it - masks.begin());
}

FullLabeling restricted_labeling(const LabelCoverInstance& L, const Assignment& phi) {
  if (L.left_labels.size() != L.num_left() || L.right_labels.size() != L.num_right())
    throw DomainError("restricted_labeling: instance carries no partial-assignment labels");
  FullLabeling out;
  for (std::size_t u = 0; u < L.num_left(); ++u) {
    std::uint64_t mask = 0;
    const auto& vars = L.left_labels[u].vars;
    for (std::size_t j = 0; j < vars.size(); ++j)
      if (phi.value(vars[j])) mask |= std::uint64_t{1} << j;
    auto idx = find_left_label(L, u, mask);
    if (!idx) throw DomainError("restricted_labeling: assignment violates a clause of T_" + std::to_string(u));
    out.left.push_back(*idx);
  }
  for (std::size_t v = 0; v < L.num_right(); ++v) {
    std::uint64_t mask = 0;
    const auto& vars = L.right_labels[v].vars;
    for (std::size_t j = 0; j < vars.size(); ++j)
      if (phi.value(vars[j])) mask |= std::uint64_t{1} << j;
    out.right.push_back(mask);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> hadamard_encode(std::uint64_t message, std::uint64_t q, std::size_t ell) {
  if (q < 2) throw DomainError("hadamard_encode: q must be at least 2");
  const std::uint64_t block = sat_pow(q, ell);
  if (block == kSaturated) throw DomainError("hadamard_encode: block length overflows");
  if (message >= block) throw DomainError("hadamard_encode: message outside F_q^ell");
  std::vector<std::uint64_t> m(ell);
  for (std::size_t i = 0; i < ell; ++i) {
    m[i] = message % q;
    message /= q;
  }
  std::vector<std::uint32_t> code(block);
  for (std::uint64_t j = 0; j < block; ++j) {
    std::uint64_t rest = j;
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < ell; ++i) {
      sum = (sum + m[i] * (rest % q)) % q;
      rest /= q;
    }
    code[j] = static_cast<std::uint32_t>(sum);
  }
  return code;
}

AlphabetReduction reduce_alphabet(const LabelCoverInstance& L, const Fraction& delta, std::uint64_t budget) {
  if (delta <= 0 || delta > 1) throw DomainError("reduce_alphabet: δ must lie in (0, 1]");
  const auto t = L.right_degree();
  if (!t || !L.is_bi_regular()) throw DomainError("reduce_alphabet: instance must be bi-regular");
  if (L.vacuous()) throw DomainError("reduce_alphabet: instance has an empty alphabet");

  const BigInt bound = ceil(Fraction(*t * *t) / delta);
  if (bound > BigInt(budget)) throw BudgetExceeded("reduce_alphabet: prime search", kSaturated, budget);
  std::uint64_t q = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(bound));
  while (!is_prime(q)) {
    ++q;
    if (q > budget) throw BudgetExceeded("reduce_alphabet: prime search", q, budget);
  }
  std::uint64_t R = 1;
  for (auto a : L.right_alphabets()) R = std::max(R, a);
  std::size_t ell = 0;
  std::uint64_t block = 1;
  while (block < R) {
    block = sat_mul(block, q);
    ++ell;
  }
  std::uint64_t table_cells = 0;
  for (const auto& e : L.edges()) table_cells = sat_add(table_cells, sat_mul(L.left_alphabet(e.left), block));
  require_budget("reduce_alphabet: projection tables", table_cells, budget);

  std::vector<std::uint64_t> right_alpha(sat_mul(L.num_right(), block), q);
  std::vector<LcEdge> edges;
  edges.reserve(L.num_edges() * block);
  for (std::size_t v = 0; v < L.num_right(); ++v) {
    for (auto e : L.right_edges(v)) {
      const LcEdge& old = L.edge(e);
      std::vector<std::vector<std::uint32_t>> codes;
      codes.reserve(L.left_alphabet(old.left));
      for (std::uint64_t a = 0; a < L.left_alphabet(old.left); ++a)
        codes.push_back(hadamard_encode(L.project(e, a), q, ell));
      for (std::uint64_t j = 0; j < block; ++j) {
        LcEdge edge{old.left, static_cast<std::uint32_t>(v * block + j), {Projection::Kind::table, {}, {}}};
        edge.projection.table.reserve(codes.size());
        for (const auto& c : codes) edge.projection.table.push_back(c[j]);
        edges.push_back(std::move(edge));
      }
    }
  }
  AlphabetReduction out;
  out.instance = LabelCoverInstance(L.left_alphabets(), std::move(right_alpha), std::move(edges));
  out.instance.left_labels = L.left_labels;
  out.q = q;
  out.ell = ell;
  out.block_length = block;
  return out;
}

Fraction wval_to_val_bound(const Fraction& delta, std::size_t t) {
  if (t < 1) throw DomainError("wval_to_val_bound: t must be positive");
  if (delta < 0 || delta > 1) throw DomainError("wval_to_val_bound: δ outside [0, 1]");
  return delta + (1 - delta) / t;
}

// ---------------------------------------------------------------------------

namespace {

BigReal real(const Fraction& f) {
  return BigReal(boost::multiprecision::numerator(f)) / BigReal(boost::multiprecision::denominator(f));
}

}  // namespace

std::string to_string(const BigReal& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

Fraction rho_of(const Fraction& p, std::size_t Delta) { return 18 * p * p * Delta * Delta; }

SoundnessParams soundness_params(const Fraction& epsilon, std::size_t Delta, const Fraction& delta, std::size_t t,
                                 std::size_t k) {
  if (epsilon <= 0 || epsilon >= 1) throw DomainError("soundness_params: ε must lie in (0, 1)");
  if (delta <= 0 || delta >= 1) throw DomainError("soundness_params: δ must lie in (0, 1)");
  if (t < 2) throw DomainError("soundness_params: t must be at least 2");
  if (Delta < 1 || k < 1) throw DomainError("soundness_params: Δ and k must be positive");
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::pow;

  SoundnessParams s;
  s.epsilon = epsilon;
  s.delta = delta;
  s.t = t;
  s.Delta = Delta;
  s.k = k;
  const Fraction base = Fraction(100 * Delta * t) / (epsilon * delta);
  const Fraction inner = Fraction(Delta * t) / (epsilon * delta);
  const BigReal base_r = real(base);
  const auto tt = static_cast<long>(t);
  const BigReal kr = BigReal(k);
  const long w = 2 * tt - 3;
  s.C = pow(base_r, 100 * tt) * log(real(inner));
  s.p = s.C / kr;
  s.mu = epsilon / 2;
  s.gamma = s.p / 2;
  s.kappa = pow(base_r, -50 * tt);
  s.alpha = pow(BigReal(10 * tt), 2 * tt) * s.kappa * pow(kr - 2, w) / pow(kr, w);
  s.beta = delta / (4 * t * t);
  s.rho = 18 * s.p * s.p * BigReal(Delta * Delta);
  s.eta = 6 * BigReal(Delta) * w * exp(-s.p * s.kappa * (kr - 2) / w);
  s.d = delta * k / (8 * t * t);
  s.theory_only = s.p > 1;
  return s;
}

std::vector<std::pair<std::string, std::string>> SoundnessParams::formulas() const {
  return {
      {"C", "(100*Delta*t/(epsilon*delta))^(100t) * ln(Delta*t/(epsilon*delta))"},
      {"p", "C/k"},
      {"mu", "epsilon/2"},
      {"gamma", "p/2"},
      {"kappa", "(100*Delta*t/(epsilon*delta))^(-50t)"},
      {"alpha", "(10t)^(2t) * kappa * (k-2)^(2t-3) / k^(2t-3)"},
      {"beta", "delta/(4t^2)"},
      {"rho", "18 p^2 Delta^2"},
      {"eta", "6 Delta (2t-3) exp(-p kappa (k-2)/(2t-3))"},
      {"d", "delta k/(8t^2)"},
  };
}

// ---------------------------------------------------------------------------

namespace {

std::string mask_string(std::uint64_t mask, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t j = 0; j < width; ++j)
    if ((mask >> j) & 1) s[j] = '1';
  return s;
}

std::uint64_t parse_mask(const std::string& s) {
  if (s.size() >= 64) throw DomainError("label cover json: label wider than 63 variables");
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] == '1') m |= std::uint64_t{1} << j;
    else if (s[j] != '0') throw DomainError("label cover json: label must be a 0/1 string");
  }
  return m;
}

}  // namespace

std::string write_label_cover_json(const LabelCoverInstance& L) {
  using nlohmann::json;
  json doc;
  doc["format"] = "gapforge-labelcover";
  doc["vacuous"] = L.vacuous();
  json left = json::array();
  for (std::size_t u = 0; u < L.num_left(); ++u) {
    json entry{{"alphabet", L.left_alphabet(u)}};
    if (u < L.left_labels.size()) {
      const auto& lab = L.left_labels[u];
      entry["vars"] = lab.vars;
      json labels = json::array();
      for (auto m : lab.masks) labels.push_back(mask_string(m, lab.vars.size()));
      entry["labels"] = std::move(labels);
    }
    left.push_back(std::move(entry));
  }
  json right = json::array();
  for (std::size_t v = 0; v < L.num_right(); ++v) {
    json entry{{"alphabet", L.right_alphabet(v)}};
    if (v < L.right_labels.size()) entry["vars"] = L.right_labels[v].vars;
    right.push_back(std::move(entry));
  }
  json edges = json::array();
  for (const auto& e : L.edges()) {
    json entry{{"left", e.left}, {"right", e.right}};
    if (e.projection.kind == Projection::Kind::restriction) entry["restriction"] = true;
    else entry["projection"] = e.projection.table;
    edges.push_back(std::move(entry));
  }
  doc["left"] = std::move(left);
  doc["right"] = std::move(right);
  doc["edges"] = std::move(edges);
  return doc.dump(1) + "\n";
}

LabelCoverInstance parse_label_cover_json(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw DomainError(std::string("label cover json: ") + e.what());
  }
  try {
    if (doc.value("format", std::string()) != "gapforge-labelcover")
      throw DomainError("label cover json: missing format tag");
    std::vector<std::uint64_t> left_alpha, right_alpha;
    std::vector<VertexLabels> left_labels, right_labels;
    bool any_left_labels = false, any_right_labels = false;
    for (const auto& entry : doc.at("left")) {
      left_alpha.push_back(entry.at("alphabet").get<std::uint64_t>());
      VertexLabels lab;
      if (entry.contains("vars")) {
        any_left_labels = true;
        lab.vars = entry.at("vars").get<std::vector<std::uint32_t>>();
        for (const auto& s : entry.at("labels")) {
          const auto str = s.get<std::string>();
          if (str.size() != lab.vars.size()) throw DomainError("label cover json: label width mismatch");
          lab.masks.push_back(parse_mask(str));
        }
        if (lab.masks.size() != left_alpha.back()) throw DomainError("label cover json: label count mismatch");
      }
      left_labels.push_back(std::move(lab));
    }
    for (const auto& entry : doc.at("right")) {
      right_alpha.push_back(entry.at("alphabet").get<std::uint64_t>());
      VertexLabels lab;
      if (entry.contains("vars")) {
        any_right_labels = true;
        lab.vars = entry.at("vars").get<std::vector<std::uint32_t>>();
      }
      right_labels.push_back(std::move(lab));
    }
    std::vector<LcEdge> edges;
    for (const auto& entry : doc.at("edges")) {
      LcEdge e;
      e.left = entry.at("left").get<std::uint32_t>();
      e.right = entry.at("right").get<std::uint32_t>();
      if (e.left >= left_alpha.size() || e.right >= right_alpha.size())
        throw DomainError("label cover json: edge endpoint out of range");
      if (entry.value("restriction", false)) {
        e.projection.kind = Projection::Kind::restriction;
        if (left_labels[e.left].masks.size() != left_alpha[e.left])
          throw DomainError("label cover json: restriction edge on a vertex without explicit labels");
        const auto& lv = left_labels[e.left].vars;
        for (auto var : right_labels[e.right].vars) {
          auto it = std::lower_bound(lv.begin(), lv.end(), var);
          if (it == lv.end() || *it != var)
            throw DomainError("label cover json: restriction to a variable the left vertex lacks");
          e.projection.select.push_back(static_cast<std::uint32_t>(it - lv.begin()));
        }
      } else {
        e.projection.table = entry.at("projection").get<std::vector<std::uint32_t>>();
      }
      edges.push_back(std::move(e));
    }
    LabelCoverInstance L(std::move(left_alpha), std::move(right_alpha), std::move(edges),
                         doc.value("vacuous", false));
    if (any_left_labels) L.left_labels = std::move(left_labels);
    if (any_right_labels) L.right_labels = std::move(right_labels);
    return L;
  } catch (const json::exception& e) {
    throw DomainError(std::string("label cover json: ") + e.what());
  }
}

}  // namespace gapforge
