#include "gapforge/setsys.hpp"
#include "gapforge/rng.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <set>
#include <sstream>

#include <omp.h>

namespace gapforge {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

IndexSet parse_index_line(std::string_view line) {
  IndexSet out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) {
      std::uint32_t v = 0;
      auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
      if (ec != std::errc() || ptr != line.data() + j)
        throw DomainError("bad index '" + std::string(line.substr(i, j - i)) + "'");
      out.push_back(v);
    }
    i = j;
  }
  return out;
}

std::string join(const IndexSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(s[i]);
  }
  return out;
}

/// η|U| compared exactly: uncovered > η·|U| ?
bool exceeds(std::size_t uncovered, const Fraction& eta, std::size_t universe) {
  return Fraction(uncovered) > eta * universe;
}

}  // namespace

SetSystem::SetSystem(std::size_t universe_size, std::vector<IndexSet> sets)
    : universe_size_(universe_size), sets_(std::move(sets)) {
  for (auto& s : sets_) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw DomainError("SetSystem: duplicate element in a set");
    if (!s.empty() && s.back() >= universe_size_) throw DomainError("SetSystem: element outside the universe");
  }
}

Bitset SetSystem::membership(std::size_t i) const {
  Bitset b(universe_size_);
  for (auto u : set(i)) b.set(u);
  return b;
}

std::vector<Bitset> SetSystem::memberships() const {
  std::vector<Bitset> out;
  out.reserve(sets_.size());
  for (std::size_t i = 0; i < sets_.size(); ++i) out.push_back(membership(i));
  return out;
}

std::string write_setsys(const SetSystem& system) {
  std::string out = "setsys " + std::to_string(system.universe_size()) + ' ' + std::to_string(system.num_sets()) + '\n';
  for (const auto& s : system.sets()) out += join(s) + '\n';
  return out;
}

SetSystem parse_setsys(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw DomainError("setsys: empty input");
  std::istringstream header{std::string(lines[0])};
  std::string tag;
  std::size_t universe = 0, k = 0;
  if (!(header >> tag >> universe >> k) || tag != "setsys") throw DomainError("setsys: malformed header");
  if (lines.size() < k + 1) throw DomainError("setsys: expected " + std::to_string(k) + " set lines");
  std::vector<IndexSet> sets;
  for (std::size_t i = 0; i < k; ++i) sets.push_back(parse_index_line(lines[i + 1]));
  for (std::size_t i = k + 1; i < lines.size(); ++i)
    if (!lines[i].empty()) throw DomainError("setsys: trailing content");
  return SetSystem(universe, std::move(sets));
}

SetSystem sample_random_subsets(std::size_t universe_size, std::size_t k, const Fraction& p, std::uint64_t seed) {
  if (p < 0 || p > 1) throw DomainError("sample_random_subsets: p outside [0, 1]");
  if (k == 0) throw DomainError("sample_random_subsets: k must be positive");
  Rng rng(seed);
  std::vector<IndexSet> sets(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t u = 0; u < universe_size; ++u)
      if (rng.bernoulli(p)) sets[i].push_back(static_cast<std::uint32_t>(u));
  return SetSystem(universe_size, std::move(sets));
}

SetSystem restrict_to_pair(const SetSystem& system, std::size_t i, std::size_t j) {
  if (i >= system.num_sets() || j >= system.num_sets() || i == j)
    throw DomainError("restrict_to_pair: need two distinct set indices");
  const IndexSet& a = system.set(i);
  const IndexSet& b = system.set(j);
  IndexSet inter;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
  std::vector<std::uint32_t> relabel(system.universe_size(), UINT32_MAX);
  for (std::size_t x = 0; x < inter.size(); ++x) relabel[inter[x]] = static_cast<std::uint32_t>(x);
  std::vector<IndexSet> sets;
  for (std::size_t s = 0; s < system.num_sets(); ++s) {
    if (s == i || s == j) continue;
    IndexSet r;
    for (auto u : system.set(s))
      if (relabel[u] != UINT32_MAX) r.push_back(relabel[u]);
    sets.push_back(std::move(r));
  }
  return SetSystem(inter.size(), std::move(sets));
}

UniformityResult is_uniform(const SetSystem& system, const Fraction& gamma, const Fraction& mu) {
  if (system.num_sets() == 0) throw DomainError("is_uniform: empty system");
  std::vector<std::size_t> count(system.universe_size(), 0);
  for (const auto& s : system.sets())
    for (auto u : s) ++count[u];
  UniformityResult result;
  const Fraction threshold = gamma * system.num_sets();
  for (std::size_t u = 0; u < count.size(); ++u)
    if (Fraction(count[u]) < threshold) result.failing.push_back(static_cast<std::uint32_t>(u));
  const std::size_t passing = system.universe_size() - result.failing.size();
  result.uniform = Fraction(passing) >= (1 - mu) * system.universe_size();
  return result;
}

std::string_view to_string(DisperserVerdictKind kind) {
  switch (kind) {
    case DisperserVerdictKind::certified_yes: return "certified-yes";
    case DisperserVerdictKind::violated: return "violated";
    case DisperserVerdictKind::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::vector<IndexSet> small_subcollections(std::size_t k, std::size_t ell) {
  std::vector<IndexSet> out;
  for (std::size_t size = 1; size <= std::min(ell, k); ++size)
    for (auto& c : combinations(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(size)))
      out.push_back(std::move(c));
  return out;
}

namespace {

std::vector<Bitset> subcollection_intersections(const SetSystem& system, const std::vector<IndexSet>& subs) {
  const auto members = system.memberships();
  std::vector<Bitset> out;
  out.reserve(subs.size());
  for (const auto& sub : subs) {
    Bitset b(system.universe_size(), true);
    for (auto s : sub) b &= members[s];
    out.push_back(std::move(b));
  }
  return out;
}

DisperserVerdict disperser_exact(const SetSystem& system, std::size_t r, const Fraction& eta,
                                 const std::vector<IndexSet>& subs, std::uint64_t budget) {
  DisperserVerdict verdict;
  const std::size_t m = subs.size();
  if (r > m) {
    // No r distinct subcollections exist: the condition holds vacuously.
    verdict.kind = DisperserVerdictKind::certified_yes;
    return verdict;
  }
  const std::uint64_t total = binomial(m, r);
  require_budget("is_strong_intersection_disperser", total, budget);
  const auto inter = subcollection_intersections(system, subs);
  const std::size_t universe = system.universe_size();

  // Parallel over the lexicographic rank space; the smallest violating rank
  // wins so the witness is schedule-independent.
  std::atomic<std::uint64_t> first_violation{kSaturated};
  const std::uint64_t chunk = std::max<std::uint64_t>(1, total / (64 * static_cast<std::uint64_t>(omp_get_max_threads())));
  const auto chunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk;
    if (begin >= first_violation.load(std::memory_order_relaxed)) continue;
    const std::uint64_t end = std::min(total, begin + chunk);
    auto comb = unrank_combination(begin, static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(r));
    for (std::uint64_t rank = begin; rank < end; ++rank) {
      Bitset covered = inter[comb[0]];
      for (std::size_t x = 1; x < r; ++x) covered |= inter[comb[x]];
      if (exceeds(universe - covered.count(), eta, universe)) {
        std::uint64_t cur = first_violation.load();
        while (rank < cur && !first_violation.compare_exchange_weak(cur, rank)) {
        }
        break;
      }
      next_combination(comb, static_cast<std::uint32_t>(m));
    }
  }

  const std::uint64_t found = first_violation.load();
  if (found == kSaturated) {
    verdict.kind = DisperserVerdictKind::certified_yes;
    verdict.combinations_checked = total;
    return verdict;
  }
  auto comb = unrank_combination(found, static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(r));
  Bitset covered(universe);
  for (auto x : comb) {
    covered |= inter[x];
    verdict.witness.push_back(subs[x]);
  }
  verdict.kind = DisperserVerdictKind::violated;
  verdict.uncovered = universe - covered.count();
  verdict.combinations_checked = found + 1;
  return verdict;
}

DisperserVerdict disperser_greedy(const SetSystem& system, std::size_t r, const Fraction& eta,
                                  const std::vector<IndexSet>& subs) {
  DisperserVerdict verdict;
  const std::size_t universe = system.universe_size();
  if (r > subs.size()) {
    verdict.kind = DisperserVerdictKind::inconclusive;
    return verdict;
  }
  const auto inter = subcollection_intersections(system, subs);
  std::vector<bool> used(subs.size(), false);
  Bitset covered(universe);
  for (std::size_t step = 0; step < r; ++step) {
    std::size_t best = subs.size();
    std::size_t best_gain = 0;
    for (std::size_t x = 0; x < subs.size(); ++x) {
      if (used[x]) continue;
      const std::size_t gain = inter[x].count() - inter[x].and_count(covered);
      if (best == subs.size() || gain < best_gain) {
        best = x;
        best_gain = gain;
      }
    }
    used[best] = true;
    covered |= inter[best];
    verdict.witness.push_back(subs[best]);
    ++verdict.combinations_checked;
  }
  verdict.uncovered = universe - covered.count();
  if (exceeds(verdict.uncovered, eta, universe)) {
    verdict.kind = DisperserVerdictKind::violated;
  } else {
    verdict.kind = DisperserVerdictKind::inconclusive;
    verdict.witness.clear();
  }
  return verdict;
}

}  // namespace

DisperserVerdict is_strong_intersection_disperser(const SetSystem& system, std::size_t r, std::size_t ell,
                                                  const Fraction& eta, CheckMode mode, std::uint64_t budget) {
  if (r < 1 || ell < 1) throw DomainError("is_strong_intersection_disperser: r and ell must be positive");
  std::uint64_t count = 0;
  for (std::size_t s = 1; s <= std::min(ell, system.num_sets()); ++s) count = sat_add(count, binomial(system.num_sets(), s));
  require_budget("is_strong_intersection_disperser: subcollections", count, budget);
  const auto subs = small_subcollections(system.num_sets(), ell);
  if (mode == CheckMode::exact) return disperser_exact(system, r, eta, subs, budget);
  return disperser_greedy(system, r, eta, subs);
}

std::size_t pairwise_intersection_max(const SetSystem& system) {
  if (system.num_sets() < 2) throw DomainError("pairwise_intersection_max: need at least two sets");
  const auto members = system.memberships();
  const auto k = static_cast<std::int64_t>(system.num_sets());
  std::size_t best = 0;
#pragma omp parallel for schedule(dynamic) reduction(max : best)
  for (std::int64_t i = 0; i < k; ++i)
    for (std::int64_t j = i + 1; j < k; ++j) best = std::max(best, members[i].and_count(members[j]));
  return best;
}

std::size_t max_set_size(const SetSystem& system) {
  std::size_t best = 0;
  for (const auto& s : system.sets()) best = std::max(best, s.size());
  return best;
}

// ---------------------------------------------------------------------------

MonotoneDnf::MonotoneDnf(std::size_t num_vars, std::vector<IndexSet> terms, bool allow_empty_term)
    : num_vars_(num_vars), terms_(std::move(terms)) {
  for (auto& t : terms_) {
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end()) throw DomainError("MonotoneDnf: repeated variable in term");
    if (!t.empty() && t.back() >= num_vars_) throw DomainError("MonotoneDnf: variable out of range");
    if (t.empty() && !allow_empty_term) throw DomainError("MonotoneDnf: empty term not allowed");
    width_ = std::max(width_, t.size());
  }
  std::set<IndexSet> seen(terms_.begin(), terms_.end());
  if (seen.size() != terms_.size()) throw DomainError("MonotoneDnf: duplicate term");
}

bool MonotoneDnf::evaluate(const std::vector<std::uint8_t>& x) const {
  if (x.size() != num_vars_) throw DomainError("MonotoneDnf::evaluate: wrong input length");
  for (const auto& t : terms_) {
    bool all = true;
    for (auto v : t)
      if (!x[v]) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

std::vector<std::uint64_t> MonotoneDnf::term_masks() const {
  if (num_vars_ > 64) throw DomainError("MonotoneDnf::term_masks: more than 64 variables");
  std::vector<std::uint64_t> masks;
  masks.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::uint64_t m = 0;
    for (auto v : t) m |= std::uint64_t{1} << v;
    masks.push_back(m);
  }
  return masks;
}

std::string write_dnf(const MonotoneDnf& f) {
  std::string out = "dnf " + std::to_string(f.num_vars()) + '\n';
  for (const auto& t : f.terms()) out += join(t) + '\n';
  return out;
}

MonotoneDnf parse_dnf(std::string_view text) {
  auto lines = split_lines(text);
  if (lines.empty()) throw DomainError("dnf: empty input");
  std::istringstream header{std::string(lines[0])};
  std::string tag;
  std::size_t k = 0;
  if (!(header >> tag >> k) || tag != "dnf") throw DomainError("dnf: malformed header");
  std::vector<IndexSet> terms;
  bool empty_term = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    // A blank line is the empty term only when it is not the trailing newline.
    if (lines[i].empty() && i + 1 == lines.size()) break;
    auto t = parse_index_line(lines[i]);
    empty_term |= t.empty();
    terms.push_back(std::move(t));
  }
  return MonotoneDnf(k, std::move(terms), empty_term);
}

MonotoneDnf dnf_from_subcollections(std::size_t k, const std::vector<IndexSet>& subcollections) {
  std::vector<IndexSet> terms = subcollections;
  for (auto& t : terms) std::sort(t.begin(), t.end());
  std::set<IndexSet> seen;
  for (const auto& t : terms)
    if (!seen.insert(t).second) throw DomainError("dnf_from_subcollections: duplicate subcollection");
  return MonotoneDnf(k, std::move(terms), true);
}

std::vector<std::uint64_t> dnf_false_counts(const MonotoneDnf& f, std::uint64_t budget) {
  const std::size_t k = f.num_vars();
  if (k >= 40) throw BudgetExceeded("dnf_false_counts", kSaturated, budget);
  const std::uint64_t total = std::uint64_t{1} << k;
  require_budget("dnf_false_counts", total, budget);
  // true_at[x] = 1 iff some term mask is a subset of x: mark the terms, then
  // close upward one coordinate at a time.
  std::vector<std::uint8_t> true_at(total, 0);
  for (auto m : f.term_masks()) true_at[m] = 1;
  const auto n = static_cast<std::int64_t>(total);
  for (std::size_t b = 0; b < k; ++b) {
    const std::uint64_t bit = std::uint64_t{1} << b;
#pragma omp parallel for schedule(static)
    for (std::int64_t x = 0; x < n; ++x)
      if (static_cast<std::uint64_t>(x) & bit) true_at[static_cast<std::size_t>(x)] |= true_at[static_cast<std::size_t>(x) ^ bit];
  }
  std::vector<std::uint64_t> counts(k + 1, 0);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(k + 1, 0);
#pragma omp for schedule(static) nowait
    for (std::int64_t x = 0; x < n; ++x)
      if (!true_at[static_cast<std::size_t>(x)]) ++local[static_cast<std::size_t>(std::popcount(static_cast<std::uint64_t>(x)))];
#pragma omp critical(gapforge_dnf_merge)
    for (std::size_t w = 0; w <= k; ++w) counts[w] += local[w];
  }
  return counts;
}

ProbabilityResult dnf_false_prob(const MonotoneDnf& f, const Fraction& p, std::uint64_t budget) {
  if (p < 0 || p > 1) throw DomainError("dnf_false_prob: p outside [0, 1]");
  const auto counts = dnf_false_counts(f, budget);
  const std::size_t k = f.num_vars();
  Fraction sum = 0;
  for (std::size_t w = 0; w <= k; ++w) {
    if (counts[w] == 0) continue;
    Fraction term = counts[w];
    for (std::size_t i = 0; i < w; ++i) term *= p;
    for (std::size_t i = w; i < k; ++i) term *= (1 - p);
    sum += term;
  }
  ProbabilityResult result;
  result.exact = sum;
  result.value = to_double(sum);
  return result;
}

ProbabilityResult dnf_false_prob(const MonotoneDnf& f, const Fraction& p, const MonteCarlo& mc) {
  if (p < 0 || p > 1) throw DomainError("dnf_false_prob: p outside [0, 1]");
  if (mc.trials == 0) throw DomainError("dnf_false_prob: zero trials");
  const auto masks = f.term_masks();
  const std::size_t k = f.num_vars();
  const auto trials = static_cast<std::int64_t>(mc.trials);
  std::uint64_t falses = 0;
#pragma omp parallel for schedule(static) reduction(+ : falses)
  for (std::int64_t i = 0; i < trials; ++i) {
    Rng rng(mix_seed(mc.seed, static_cast<std::uint64_t>(i)));
    std::uint64_t x = 0;
    for (std::size_t v = 0; v < k; ++v)
      if (rng.bernoulli(p)) x |= std::uint64_t{1} << v;
    bool value = false;
    for (auto m : masks)
      if ((m & x) == m) {
        value = true;
        break;
      }
    if (!value) ++falses;
  }
  ProbabilityResult result;
  result.estimated = true;
  result.trials = mc.trials;
  result.seed = mc.seed;
  result.value = static_cast<double>(falses) / static_cast<double>(mc.trials);
  return result;
}

// ---------------------------------------------------------------------------

SampledPropertiesReport check_sampled_properties(const SetSystem& system, const Fraction& p, std::size_t delta,
                                                 std::size_t n, const SampledCheckParams& params,
                                                 std::uint64_t budget) {
  SampledPropertiesReport report;
  report.max_size = max_set_size(system);
  report.size_bound = 2 * p * system.universe_size();
  report.size_ok = Fraction(report.max_size) <= report.size_bound;
  if (system.num_sets() >= 2) {
    report.max_pairwise = pairwise_intersection_max(system);
    report.pairwise_bound = 18 * p * p * delta * delta * n;
    report.pairwise_ok = Fraction(report.max_pairwise) <= report.pairwise_bound;
  } else {
    report.pairwise_ok = true;
  }
  report.gamma = p / 2;
  report.uniformity = is_uniform(system, report.gamma, params.mu);
  for (std::size_t i = 0; i < system.num_sets(); ++i)
    for (std::size_t j = i + 1; j < system.num_sets(); ++j) {
      SetSystem restricted = restrict_to_pair(system, i, j);
      PairDisperserVerdict pv{i, j, {}};
      if (restricted.num_sets() == 0) {
        pv.verdict.kind = DisperserVerdictKind::certified_yes;
      } else {
        pv.verdict = is_strong_intersection_disperser(restricted, params.r, params.ell, params.eta, params.mode, budget);
      }
      report.dispersers.push_back(std::move(pv));
    }
  return report;
}

}  // namespace gapforge
