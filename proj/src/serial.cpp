#include "gapforge/serial.hpp"

#include <algorithm>
#include <bit>

namespace gapforge::serial {

MaxValResult brute_force_max_val(const CnfFormula& formula, std::uint64_t budget) {
  const std::uint32_t n = formula.num_vars();
  const std::uint64_t total = n >= 64 ? kSaturated : (std::uint64_t{1} << n);
  require_budget("serial::brute_force_max_val", total, budget);
  std::uint64_t best = 0, best_index = 0;
  for (std::uint64_t index = 0; index < total; ++index) {
    // x1 is the most significant bit of the index.
    std::vector<std::uint8_t> bits(n);
    for (std::uint32_t v = 0; v < n; ++v) bits[v] = (index >> (n - 1 - v)) & 1;
    const auto phi = Assignment::total(bits);
    std::uint64_t sat = 0;
    for (std::size_t c = 0; c < formula.num_clauses(); ++c) sat += formula.satisfies(c, phi) ? 1 : 0;
    if (index == 0 || sat > best) {
      best = sat;
      best_index = index;
    }
  }
  MaxValResult out;
  std::vector<std::uint8_t> bits(n);
  for (std::uint32_t v = 0; v < n; ++v) bits[v] = (best_index >> (n - 1 - v)) & 1;
  out.witness = Assignment::total(bits);
  out.satisfied = best;
  out.value = Fraction(best, formula.num_clauses() == 0 ? 1 : formula.num_clauses());
  out.enumerated = total;
  return out;
}

std::vector<std::uint64_t> dnf_false_counts(const MonotoneDnf& f, std::uint64_t budget) {
  const std::size_t k = f.num_vars();
  if (k >= 40) throw BudgetExceeded("serial::dnf_false_counts", kSaturated, budget);
  const std::uint64_t total = std::uint64_t{1} << k;
  require_budget("serial::dnf_false_counts", total, budget);
  const auto masks = f.term_masks();
  std::vector<std::uint64_t> counts(k + 1, 0);
  for (std::uint64_t x = 0; x < total; ++x) {
    bool sat = false;
    for (auto m : masks)
      if ((x & m) == m) {
        sat = true;
        break;
      }
    if (!sat) ++counts[static_cast<std::size_t>(std::popcount(x))];
  }
  return counts;
}

DisperserVerdict strong_disperser(const SetSystem& system, std::size_t r, std::size_t ell, const Fraction& eta,
                                  std::uint64_t budget) {
  if (r < 1 || ell < 1) throw DomainError("serial::strong_disperser: r and ell must be positive");
  const auto subs = small_subcollections(system.num_sets(), ell);
  DisperserVerdict verdict;
  if (r > subs.size()) {
    verdict.kind = DisperserVerdictKind::certified_yes;
    return verdict;
  }
  const std::uint64_t total = binomial(subs.size(), r);
  require_budget("serial::strong_disperser", total, budget);
  const std::size_t U = system.universe_size();
  auto comb = unrank_combination(0, static_cast<std::uint32_t>(subs.size()), static_cast<std::uint32_t>(r));
  for (std::uint64_t rank = 0; rank < total; ++rank) {
    std::size_t uncovered = 0;
    for (std::uint32_t u = 0; u < U; ++u) {
      bool in_union = false;
      for (auto x : comb) {
        bool in_all = true;
        for (auto s : subs[x])
          if (!std::binary_search(system.set(s).begin(), system.set(s).end(), u)) {
            in_all = false;
            break;
          }
        if (in_all) {
          in_union = true;
          break;
        }
      }
      uncovered += in_union ? 0 : 1;
    }
    if (Fraction(uncovered) > eta * U) {
      verdict.kind = DisperserVerdictKind::violated;
      for (auto x : comb) verdict.witness.push_back(subs[x]);
      verdict.uncovered = uncovered;
      verdict.combinations_checked = rank + 1;
      return verdict;
    }
    next_combination(comb, static_cast<std::uint32_t>(subs.size()));
  }
  verdict.kind = DisperserVerdictKind::certified_yes;
  verdict.combinations_checked = total;
  return verdict;
}

namespace {

/// Do f_i and f_j agree at every point of `common`?
bool agree_on(const FunctionCollection& F, std::size_t i, std::size_t j, const IndexSet& common) {
  return std::all_of(common.begin(), common.end(),
                     [&](std::uint32_t u) { return F.values(i).test(u) == F.values(j).test(u); });
}

IndexSet intersect_all(const FunctionCollection& F, const IndexSet& members) {
  IndexSet out;
  for (std::uint32_t u = 0; u < F.n(); ++u)
    if (std::all_of(members.begin(), members.end(), [&](std::uint32_t s) { return F.domain(s).test(u); }))
      out.push_back(u);
  return out;
}

}  // namespace

Fraction t_wagr(const FunctionCollection& F, std::size_t t, std::uint64_t budget) {
  if (t < 2 || t > F.k()) throw DomainError("serial::t_wagr: need 2 <= t <= k");
  const std::uint64_t total = binomial(F.k(), t);
  require_budget("serial::t_wagr", total, budget);
  std::uint64_t agreeing = 0;
  for (const auto& comb : combinations(static_cast<std::uint32_t>(F.k()), static_cast<std::uint32_t>(t))) {
    const IndexSet common = intersect_all(F, comb);
    bool any = false;
    for (std::size_t a = 0; a < comb.size() && !any; ++a)
      for (std::size_t b = a + 1; b < comb.size() && !any; ++b) any = agree_on(F, comb[a], comb[b], common);
    agreeing += any ? 1 : 0;
  }
  return Fraction(agreeing, total);
}

Fraction pair_consistency(const FunctionCollection& F, std::size_t i, std::size_t j, std::size_t ell,
                          ZeroLevel zero) {
  const std::size_t k = F.k();
  if (i >= k || j >= k || i == j || ell + 2 > k) throw DomainError("serial::pair_consistency: bad arguments");
  if (ell == 0 && zero == ZeroLevel::convention) return 1;
  IndexSet others;
  for (std::uint32_t s = 0; s < k; ++s)
    if (s != i && s != j) others.push_back(s);
  std::uint64_t good = 0, total = 0;
  for (const auto& pick : combinations(static_cast<std::uint32_t>(others.size()), static_cast<std::uint32_t>(ell))) {
    IndexSet members = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
    for (auto x : pick) members.push_back(others[x]);
    good += agree_on(F, i, j, intersect_all(F, members)) ? 1 : 0;
    ++total;
  }
  return Fraction(good, total);
}

namespace {

template <typename Value>
LcOptimum lc_search(const LabelCoverInstance& L, std::uint64_t budget, Value value) {
  if (L.vacuous()) throw DomainError("serial: instance has an empty alphabet");
  const std::uint64_t total = left_labeling_count(L);
  require_budget("serial::brute_force", total, budget);
  LeftLabeling sigma(L.num_left(), 0);
  LcOptimum best;
  bool have = false;
  for (std::uint64_t n = 0; n < total; ++n) {
    const Fraction v = value(sigma);
    if (!have || v > best.value) {
      best.value = v;
      best.labeling.left = sigma;
      have = true;
    }
    // Odometer with the last left vertex fastest.
    for (std::size_t u = L.num_left(); u-- > 0;) {
      if (++sigma[u] < L.left_alphabet(u)) break;
      sigma[u] = 0;
    }
  }
  best.labeling = extend_optimally(L, best.labeling.left);
  best.enumerated = total;
  return best;
}

}  // namespace

LcOptimum brute_force_val(const LabelCoverInstance& L, std::uint64_t budget) {
  if (L.num_edges() == 0) throw DomainError("serial::brute_force_val: instance has no edges");
  return lc_search(L, budget,
                   [&](const LeftLabeling& s) { return labeling_value(L, extend_optimally(L, s)); });
}

LcOptimum brute_force_wval(const LabelCoverInstance& L, std::uint64_t budget) {
  if (L.num_right() == 0) throw DomainError("serial::brute_force_wval: no right vertices");
  return lc_search(L, budget, [&](const LeftLabeling& s) { return weak_agreement_value(L, s); });
}

CoverageResult exact_max_coverage(const CoverageInstance& I, std::uint64_t budget) {
  if (I.k() > I.num_sets()) throw DomainError("serial::exact_max_coverage: k exceeds the number of sets");
  const std::uint64_t total = binomial(I.num_sets(), I.k());
  require_budget("serial::exact_max_coverage", total, budget);
  CoverageResult best;
  bool have = false;
  for (const auto& comb : combinations(static_cast<std::uint32_t>(I.num_sets()), static_cast<std::uint32_t>(I.k()))) {
    const std::uint64_t cov = coverage_of(I, comb);
    if (!have || cov > best.covered) {
      best.covered = cov;
      best.sets = comb;
      have = true;
    }
  }
  best.enumerated = total;
  return best;
}

ClusteringResult exact_clustering(const ClusteringInstance& I, unsigned exponent, std::uint64_t budget) {
  if (I.k() > I.facilities()) throw DomainError("serial::exact_clustering: k exceeds the number of facilities");
  const std::uint64_t total = binomial(I.facilities(), I.k());
  require_budget("serial::exact_clustering", total, budget);
  ClusteringResult best;
  bool have = false;
  for (const auto& comb :
       combinations(static_cast<std::uint32_t>(I.facilities()), static_cast<std::uint32_t>(I.k()))) {
    std::uint64_t cost = 0;
    for (std::size_t c = 0; c < I.clients(); ++c) {
      std::uint64_t near = kSaturated;
      for (auto f : comb) near = std::min<std::uint64_t>(near, I.client_to_facility(c, f));
      std::uint64_t term = 1;
      for (unsigned e = 0; e < exponent; ++e) term *= near;
      cost += term;
    }
    if (!have || cost < best.cost) {
      best.cost = cost;
      best.facilities = comb;
      have = true;
    }
  }
  best.enumerated = total;
  return best;
}

NcpResult exact_ncp(const CodeInstance& I, std::uint64_t budget) {
  if (I.cols > 62) throw BudgetExceeded("serial::exact_ncp", kSaturated, budget);
  const std::uint64_t total = std::uint64_t{1} << I.cols;
  require_budget("serial::exact_ncp", total, budget);
  NcpResult best;
  bool have = false;
  std::vector<std::uint8_t> x(I.cols);
  for (std::uint64_t key = 0; key < total; ++key) {
    for (std::size_t c = 0; c < I.cols; ++c) x[c] = (key >> (I.cols - 1 - c)) & 1;
    const std::uint64_t cost = ncp_cost(I, x);
    if (!have || cost < best.cost) {
      best.cost = cost;
      best.x = x;
      have = true;
    }
  }
  best.enumerated = total;
  return best;
}

CvpResult exact_cvp(const LatticeInstance& I, std::optional<std::int64_t> box, std::uint64_t budget) {
  if (I.cols == 0) throw DomainError("serial::exact_cvp: no columns");
  const std::int64_t B = box ? *box : static_cast<std::int64_t>(I.k) + 1;
  if (B < 0) throw DomainError("serial::exact_cvp: box must be nonnegative");
  const std::uint64_t points = sat_pow(static_cast<std::uint64_t>(2 * B + 1), I.cols);
  require_budget("serial::exact_cvp", points, budget);
  CvpResult best;
  best.box = B;
  best.box_points = points;
  bool have = false;
  std::vector<std::int64_t> x(I.cols, -B);
  for (std::uint64_t n = 0; n < points; ++n) {
    BigInt cost = cvp_cost(I, x);
    if (!have || cost < best.cost) {
      best.cost = std::move(cost);
      best.x = x;
      have = true;
    }
    for (std::size_t c = I.cols; c-- > 0;) {
      if (++x[c] <= B) break;
      x[c] = -B;
    }
  }
  best.enumerated = points;
  return best;
}

}  // namespace gapforge::serial
