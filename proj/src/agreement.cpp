#include "gapforge/agreement.hpp"
#include "gapforge/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include <omp.h>

namespace gapforge {

std::size_t disagr(const LocalFunction& f1, const LocalFunction& f2) {
  if (f1.domain.size() != f1.values.size() || f2.domain.size() != f2.values.size())
    throw DomainError("disagr: domain and value lengths differ");
  std::size_t count = 0;
  std::size_t a = 0, b = 0;
  while (a < f1.domain.size() && b < f2.domain.size()) {
    if (f1.domain[a] < f2.domain[b]) {
      ++a;
    } else if (f2.domain[b] < f1.domain[a]) {
      ++b;
    } else {
      if ((f1.values[a] != 0) != (f2.values[b] != 0)) ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

FunctionCollection::FunctionCollection(SetSystem system, std::vector<std::vector<std::uint8_t>> values)
    : system_(std::move(system)) {
  if (values.size() != system_.num_sets()) throw DomainError("FunctionCollection: one function per set required");
  domain_ = system_.memberships();
  value_.assign(system_.num_sets(), Bitset(system_.universe_size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    const IndexSet& s = system_.set(i);
    if (values[i].size() != s.size()) throw DomainError("FunctionCollection: function length differs from set size");
    for (std::size_t x = 0; x < s.size(); ++x) {
      if (values[i][x] > 1) throw DomainError("FunctionCollection: values must be 0 or 1");
      if (values[i][x]) value_[i].set(s[x]);
    }
  }
}

FunctionCollection FunctionCollection::restrictions_of(const SetSystem& system, const std::vector<std::uint8_t>& g) {
  if (g.size() != system.universe_size()) throw DomainError("restrictions_of: g must cover the universe");
  std::vector<std::vector<std::uint8_t>> values;
  for (const auto& s : system.sets()) {
    std::vector<std::uint8_t> v;
    for (auto u : s) v.push_back(g[u] ? 1 : 0);
    values.push_back(std::move(v));
  }
  return FunctionCollection(system, std::move(values));
}

LocalFunction FunctionCollection::function(std::size_t i) const {
  LocalFunction f{system_.set(i), {}};
  for (auto u : f.domain) f.values.push_back(value_[i].test(u) ? 1 : 0);
  return f;
}

Bitset FunctionCollection::disagreement(std::size_t i, std::size_t j) const {
  Bitset d = value_.at(i) ^ value_.at(j);
  d &= domain_[i];
  d &= domain_[j];
  return d;
}

FunctionCollection FunctionCollection::subcollection(const IndexSet& indices) const {
  std::vector<IndexSet> sets;
  std::vector<std::vector<std::uint8_t>> values;
  for (auto i : indices) {
    auto f = function(i);
    sets.push_back(std::move(f.domain));
    values.push_back(std::move(f.values));
  }
  return FunctionCollection(SetSystem(n(), std::move(sets)), std::move(values));
}

std::size_t disagr(const FunctionCollection& F, std::size_t i, std::size_t j) {
  return F.disagreement(i, j).count();
}

std::string write_funcs(const FunctionCollection& F) {
  std::string out = "funcs " + std::to_string(F.n()) + ' ' + std::to_string(F.k()) + '\n';
  for (std::size_t i = 0; i < F.k(); ++i) {
    const auto f = F.function(i);
    for (auto u : f.domain) out += std::to_string(u) + ' ';
    out += ':';
    if (!f.values.empty()) out += ' ';
    for (auto v : f.values) out += v ? '1' : '0';
    out += '\n';
  }
  return out;
}

FunctionCollection parse_funcs(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line, tag;
  if (!std::getline(in, line)) throw DomainError("funcs: empty input");
  std::istringstream header(line);
  std::size_t n = 0, k = 0;
  if (!(header >> tag >> n >> k) || tag != "funcs") throw DomainError("funcs: malformed header");
  std::vector<IndexSet> sets;
  std::vector<std::vector<std::uint8_t>> values;
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::getline(in, line)) throw DomainError("funcs: expected " + std::to_string(k) + " function lines");
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw DomainError("funcs: missing ':' on line " + std::to_string(i + 2));
    std::istringstream idx(line.substr(0, colon));
    IndexSet s;
    long long u = 0;
    while (idx >> u) {
      if (u < 0) throw DomainError("funcs: negative index");
      s.push_back(static_cast<std::uint32_t>(u));
    }
    if (!idx.eof()) throw DomainError("funcs: bad index on line " + std::to_string(i + 2));
    std::istringstream bits(line.substr(colon + 1));
    std::string b;
    bits >> b;
    std::vector<std::uint8_t> v;
    for (char c : b) {
      if (c != '0' && c != '1') throw DomainError("funcs: bit string must be 0/1");
      v.push_back(c == '1');
    }
    // Pair values with indices before the set is sorted by SetSystem.
    std::vector<std::pair<std::uint32_t, std::uint8_t>> zipped;
    if (v.size() != s.size()) throw DomainError("funcs: bit string length differs from index count");
    for (std::size_t x = 0; x < s.size(); ++x) zipped.emplace_back(s[x], v[x]);
    std::sort(zipped.begin(), zipped.end());
    s.clear();
    v.clear();
    for (auto [a, bit] : zipped) {
      s.push_back(a);
      v.push_back(bit);
    }
    sets.push_back(std::move(s));
    values.push_back(std::move(v));
  }
  return FunctionCollection(SetSystem(n, std::move(sets)), std::move(values));
}

bool consistent_on(const FunctionCollection& F, std::size_t i, std::size_t j, const IndexSet& others) {
  Bitset d = F.disagreement(i, j);
  for (auto s : others) d &= F.domain(s);
  return d.none();
}

// ---------------------------------------------------------------------------

namespace {

/// Flattened pairwise disagreement bitsets, index i*k + j for i < j.
std::vector<Bitset> all_disagreements(const FunctionCollection& F) {
  const std::size_t k = F.k();
  std::vector<Bitset> d(k * k);
  const auto kk = static_cast<std::int64_t>(k);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < kk; ++i)
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j)
      d[static_cast<std::size_t>(i) * k + j] = F.disagreement(static_cast<std::size_t>(i), j);
  return d;
}

bool some_pair_agrees(const FunctionCollection& F, const std::vector<Bitset>& d, const IndexSet& comb) {
  Bitset inter = F.domain(comb[0]);
  for (std::size_t x = 1; x < comb.size(); ++x) inter &= F.domain(comb[x]);
  for (std::size_t a = 0; a < comb.size(); ++a)
    for (std::size_t b = a + 1; b < comb.size(); ++b)
      if (!d[comb[a] * F.k() + comb[b]].intersects(inter)) return true;
  return false;
}

void check_t(const FunctionCollection& F, std::size_t t) {
  if (t < 2 || t > F.k()) throw DomainError("t_wagr: need 2 <= t <= k");
}

}  // namespace

AgreementValue t_wagr(const FunctionCollection& F, std::size_t t, std::uint64_t budget) {
  check_t(F, t);
  const std::uint64_t total = binomial(F.k(), t);
  require_budget("t_wagr", total, budget);
  const auto d = all_disagreements(F);
  const std::uint64_t chunk = std::max<std::uint64_t>(1, total / 256);
  const auto chunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);
  const auto k = static_cast<std::uint32_t>(F.k());
  const auto tt = static_cast<std::uint32_t>(t);
  std::uint64_t agreeing = 0;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : agreeing)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk;
    const std::uint64_t end = std::min(total, begin + chunk);
    auto comb = unrank_combination(begin, k, tt);
    for (std::uint64_t r = begin; r < end; ++r) {
      if (some_pair_agrees(F, d, comb)) ++agreeing;
      next_combination(comb, k);
    }
  }
  AgreementValue out;
  out.exact = Fraction(agreeing, total);
  out.value = to_double(*out.exact);
  return out;
}

AgreementValue t_wagr(const FunctionCollection& F, std::size_t t, const MonteCarlo& mc) {
  check_t(F, t);
  if (mc.trials == 0) throw DomainError("t_wagr: zero trials");
  const auto d = all_disagreements(F);
  const auto trials = static_cast<std::int64_t>(mc.trials);
  std::uint64_t agreeing = 0;
#pragma omp parallel for schedule(static) reduction(+ : agreeing)
  for (std::int64_t i = 0; i < trials; ++i) {
    Rng rng(mix_seed(mc.seed, static_cast<std::uint64_t>(i)));
    const auto comb = rng.subset(static_cast<std::uint32_t>(F.k()), static_cast<std::uint32_t>(t));
    if (some_pair_agrees(F, d, comb)) ++agreeing;
  }
  AgreementValue out;
  out.estimated = true;
  out.trials = mc.trials;
  out.seed = mc.seed;
  out.value = static_cast<double>(agreeing) / static_cast<double>(mc.trials);
  return out;
}

namespace {

IndexSet others_of(std::size_t k, std::size_t i, std::size_t j) {
  IndexSet out;
  for (std::size_t s = 0; s < k; ++s)
    if (s != i && s != j) out.push_back(static_cast<std::uint32_t>(s));
  return out;
}

/// Count of ℓ-subsets of `others` on which the disagreement set `d` is
/// covered away (d ∩ ⋂ domains = ∅).
std::uint64_t consistent_count(const FunctionCollection& F, const Bitset& d, const IndexSet& others, std::size_t ell) {
  if (ell == 0) return d.none() ? 1 : 0;
  std::uint64_t count = 0;
  std::vector<std::uint32_t> comb(ell);
  for (std::size_t x = 0; x < ell; ++x) comb[x] = static_cast<std::uint32_t>(x);
  // Depth-first prefix intersections avoid recomputing shared prefixes.
  std::vector<Bitset> prefix(ell + 1);
  prefix[0] = d;
  std::size_t valid = 0;
  const auto m = static_cast<std::uint32_t>(others.size());
  do {
    // Recompute prefixes from the first changed position.
    for (std::size_t x = valid; x < ell; ++x) prefix[x + 1] = prefix[x] & F.domain(others[comb[x]]);
    if (prefix[ell].none()) ++count;
    // Find the first position next_combination will change.
    std::size_t pos = ell;
    while (pos > 0 && comb[pos - 1] == m - ell + pos - 1) --pos;
    valid = pos == 0 ? 0 : pos - 1;
  } while (next_combination(comb, m));
  return count;
}

}  // namespace

Fraction pair_consistency(const FunctionCollection& F, std::size_t i, std::size_t j, std::size_t ell,
                          std::uint64_t budget, ZeroLevel zero) {
  const std::size_t k = F.k();
  if (i >= k || j >= k || i == j) throw DomainError("pair_consistency: need two distinct indices");
  if (ell + 2 > k) throw DomainError("pair_consistency: need ℓ <= k - 2");
  if (ell == 0) {
    if (zero == ZeroLevel::convention) return 1;
    return F.disagreement(i, j).none() ? 1 : 0;
  }
  const std::uint64_t total = binomial(k - 2, ell);
  require_budget("pair_consistency", total, budget);
  return Fraction(consistent_count(F, F.disagreement(i, j), others_of(k, i, j), ell), total);
}

// ---------------------------------------------------------------------------

RedBlueOverlap::RedBlueOverlap(std::vector<Edge> overlap)
    : std::runtime_error("red and blue edge sets overlap on " + std::to_string(overlap.size()) + " pair(s), first {" +
                         std::to_string(overlap.at(0).first) + "," + std::to_string(overlap.at(0).second) + "}"),
      overlap_(std::move(overlap)) {}

namespace {

std::vector<Edge> normalize(std::size_t k, std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.first == e.second) throw DomainError("RedBlueGraph: self-loop");
    if (e.first >= k || e.second >= k) throw DomainError("RedBlueGraph: vertex out of range");
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace

RedBlueGraph::RedBlueGraph(std::size_t k, const std::vector<Edge>& blue, const std::vector<Edge>& red)
    : blue_(normalize(k, blue)), red_(normalize(k, red)), blue_adj_(k, Bitset(k)), red_adj_(k, Bitset(k)) {
  std::vector<Edge> overlap;
  std::set_intersection(blue_.begin(), blue_.end(), red_.begin(), red_.end(), std::back_inserter(overlap));
  if (!overlap.empty()) throw RedBlueOverlap(std::move(overlap));
  for (auto [u, v] : blue_) {
    blue_adj_[u].set(v);
    blue_adj_[v].set(u);
  }
  for (auto [u, v] : red_) {
    red_adj_[u].set(v);
    red_adj_[v].set(u);
  }
}

RedBlueGraph build_two_level_graph(const FunctionCollection& F, const Fraction& alpha, const Fraction& beta,
                                   std::size_t t, const TwoLevelOptions& options) {
  const std::size_t k = F.k();
  if (t < 2) throw DomainError("build_two_level_graph: t must be at least 2");
  if (alpha > beta) throw DomainError("build_two_level_graph: need α <= β");
  if (k < 2 * t - 1) throw DomainError("build_two_level_graph: need k >= 2t - 1");
  const std::size_t blue_level = t - 2;
  const std::size_t red_level = 2 * t - 3;
  const std::uint64_t pairs = binomial(k, 2);
  const std::uint64_t work =
      sat_mul(pairs, sat_add(blue_level ? binomial(k - 2, blue_level) : 1, binomial(k - 2, red_level)));
  const bool exact = work <= options.budget;

  std::vector<std::int8_t> colour(pairs, 0);  // 1 blue, -1 red, 2 both
  const auto kk = static_cast<std::int64_t>(k);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < kk; ++i) {
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j) {
      const auto ii = static_cast<std::size_t>(i);
      const std::size_t pair_index = ii * k - ii * (ii + 1) / 2 + (j - ii - 1);
      const Bitset d = F.disagreement(ii, j);
      const IndexSet others = others_of(k, ii, j);
      Fraction blue_frac, red_frac;
      if (exact) {
        blue_frac = blue_level == 0 && options.zero == ZeroLevel::convention
                        ? Fraction(1)
                        : Fraction(consistent_count(F, d, others, blue_level), binomial(k - 2, blue_level));
        red_frac = Fraction(consistent_count(F, d, others, red_level), binomial(k - 2, red_level));
      } else {
        auto estimate = [&](std::size_t ell, std::uint64_t salt) -> Fraction {
          if (ell == 0) return options.zero == ZeroLevel::convention || d.none() ? 1 : 0;
          std::uint64_t hits = 0;
          for (std::uint64_t trial = 0; trial < options.mc_trials; ++trial) {
            Rng rng(mix_seed(mix_seed(options.seed, pair_index * 2 + salt), trial));
            auto pick = rng.subset(static_cast<std::uint32_t>(others.size()), static_cast<std::uint32_t>(ell));
            Bitset x = d;
            for (auto p : pick) x &= F.domain(others[p]);
            if (x.none()) ++hits;
          }
          return Fraction(hits, options.mc_trials);
        };
        blue_frac = estimate(blue_level, 0);
        red_frac = estimate(red_level, 1);
      }
      const bool blue = blue_frac >= beta;
      const bool red = red_frac < alpha;
      colour[pair_index] = blue && red ? 2 : blue ? 1 : red ? -1 : 0;
    }
  }
  std::vector<Edge> blue, red;
  std::size_t idx = 0;
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = i + 1; j < k; ++j, ++idx) {
      if (colour[idx] == 1 || colour[idx] == 2) blue.emplace_back(i, j);
      if (colour[idx] == -1 || colour[idx] == 2) red.emplace_back(i, j);
    }
  RedBlueGraph g(k, blue, red);
  g.estimated = !exact;
  return g;
}

RbTransitivity check_rb_transitive(const RedBlueGraph& G, std::uint64_t h) {
  RbTransitivity out;
  for (auto [u, v] : G.red_edges()) {
    const std::size_t common = G.blue_neighbors(u).and_count(G.blue_neighbors(v));
    if (common >= h) {
      out.holds = false;
      out.witness = RbWitness{u, v, common};
      return out;
    }
  }
  return out;
}

std::uint64_t non_red_pairs(const RedBlueGraph& G, const IndexSet& B) {
  Bitset in(G.k());
  for (auto u : B) in.set(u);
  std::uint64_t red = 0;
  for (auto u : B) red += G.red_neighbors(u).and_count(in);
  return static_cast<std::uint64_t>(B.size()) * B.size() - red;
}

NonRedSubgraph find_non_red_subgraph(const RedBlueGraph& G, std::size_t d, SearchMode mode, std::uint64_t budget) {
  const std::size_t k = G.k();
  if (d == 0 || d > k) throw DomainError("find_non_red_subgraph: need 1 <= d <= k");
  NonRedSubgraph out;
  out.mode = mode;
  if (mode == SearchMode::exact) {
    const std::uint64_t total = binomial(k, d);
    require_budget("find_non_red_subgraph", total, budget);
    const std::uint64_t chunk = std::max<std::uint64_t>(1, total / 256);
    const auto chunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);
    std::uint64_t best_red = kSaturated, best_rank = kSaturated;
#pragma omp parallel
    {
      std::uint64_t local_red = kSaturated, local_rank = kSaturated;
      Bitset in(k);
#pragma omp for schedule(dynamic, 1)
      for (std::int64_t c = 0; c < chunks; ++c) {
        const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk;
        const std::uint64_t end = std::min(total, begin + chunk);
        auto comb = unrank_combination(begin, static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(d));
        for (std::uint64_t r = begin; r < end; ++r) {
          in = Bitset(k);
          for (auto u : comb) in.set(u);
          std::uint64_t red = 0;
          for (auto u : comb) red += G.red_neighbors(u).and_count(in);
          if (red < local_red || (red == local_red && r < local_rank)) {
            local_red = red;
            local_rank = r;
          }
          next_combination(comb, static_cast<std::uint32_t>(k));
        }
      }
#pragma omp critical(gapforge_subgraph_merge)
      if (local_red < best_red || (local_red == best_red && local_rank < best_rank)) {
        best_red = local_red;
        best_rank = local_rank;
      }
    }
    out.vertices = unrank_combination(best_rank, static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(d));
    out.enumerated = total;
  } else {
    Bitset in(k, true);
    std::size_t remaining = k;
    while (remaining > d) {
      std::size_t worst = k, worst_red = 0;
      for (std::size_t u = 0; u < k; ++u) {
        if (!in.test(u)) continue;
        const std::size_t red = G.red_neighbors(u).and_count(in);
        if (worst == k || red > worst_red) {
          worst = u;
          worst_red = red;
        }
      }
      in.reset(worst);
      --remaining;
      ++out.enumerated;
    }
    out.vertices = in.indices();
  }
  out.non_red_pairs = non_red_pairs(G, out.vertices);
  out.density = Fraction(out.non_red_pairs, static_cast<std::uint64_t>(d) * d);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Fraction> default_zeta_sweep(const Fraction& rho) {
  std::vector<Fraction> z;
  for (int j = 0; j <= 9; ++j) z.push_back(rho * j / 9);
  return z;
}

MajorityResult majority_decode(const FunctionCollection& F, const IndexSet& subcollection, std::vector<Fraction> zetas,
                               std::optional<Fraction> rho) {
  if (subcollection.empty()) throw DomainError("majority_decode: empty subcollection");
  const std::size_t n = F.n();
  if (n == 0) throw DomainError("majority_decode: empty universe");
  for (auto i : subcollection)
    if (i >= F.k()) throw DomainError("majority_decode: index out of range");
  const std::size_t s = subcollection.size();

  MajorityResult out;
  out.g.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t cover = 0, ones = 0;
    for (auto i : subcollection)
      if (F.domain(i).test(x)) {
        ++cover;
        ones += F.values(i).test(x) ? 1 : 0;
      }
    out.g[x] = 2 * ones > cover ? 1 : 0;
  }
  Bitset g(n);
  for (std::size_t x = 0; x < n; ++x)
    if (out.g[x]) g.set(x);
  std::uint64_t total = 0;
  for (auto i : subcollection) {
    Bitset diff = g ^ F.values(i);
    total += diff.and_count(F.domain(i));
  }
  out.mean_disagr = Fraction(total, s);

  std::vector<std::size_t> pair_disagr(s * s, 0);
  std::size_t max_inter = 0;
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = a + 1; b < s; ++b) {
      const std::size_t dis = disagr(F, subcollection[a], subcollection[b]);
      pair_disagr[a * s + b] = pair_disagr[b * s + a] = dis;
      max_inter = std::max(max_inter, F.domain(subcollection[a]).and_count(F.domain(subcollection[b])));
    }
  std::uint64_t pair_total = 0;
  for (auto v : pair_disagr) pair_total += v;
  out.pair_mean = Fraction(pair_total, static_cast<std::uint64_t>(s) * s);
  out.rho = rho ? *rho : Fraction(max_inter, n);
  out.power_mean_holds = out.pair_mean * n >= out.mean_disagr * out.mean_disagr;

  if (zetas.empty()) zetas = default_zeta_sweep(out.rho);
  for (const auto& zeta : zetas) {
    ZetaCheck c;
    c.zeta = zeta;
    const Fraction threshold = zeta * n;
    std::uint64_t above = 0;
    for (auto v : pair_disagr)
      if (Fraction(v) > threshold) ++above;
    c.kappa = Fraction(above, static_cast<std::uint64_t>(s) * s);
    const Fraction inner = out.rho * c.kappa + zeta;
    c.rhs_squared = inner * n * n;
    c.rhs = static_cast<double>(n) * std::sqrt(to_double(inner));
    c.holds = sq_leq(out.mean_disagr, c.rhs_squared);
    c.upper_holds = out.pair_mean <= inner * n;
    out.checks.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------

Fraction to_fraction(const BigReal& x) {
  if (x == 0) return 0;
  int e = 0;
  const BigReal m = boost::multiprecision::frexp(x, &e);
  constexpr int kShift = 400;
  const BigInt mi = boost::multiprecision::ldexp(m, kShift).convert_to<BigInt>();
  const int exp2 = e - kShift;
  if (exp2 >= 0) return Fraction(mi * (BigInt(1) << exp2));
  return Fraction(mi, BigInt(1) << -exp2);
}

DecodeParams DecodeParams::from(const SoundnessParams& params) {
  DecodeParams p;
  p.alpha = to_fraction(params.alpha);
  return p;
}

AgreementDecode agreement_decode(const FunctionCollection& F, std::size_t t, const Fraction& delta,
                                 const DecodeParams& params) {
  const std::size_t k = F.k();
  if (t < 2) throw DomainError("agreement_decode: t must be at least 2");
  if (delta <= 0 || delta > 1) throw DomainError("agreement_decode: δ must lie in (0, 1]");
  if (k < 2 * t - 1) throw DomainError("agreement_decode: need k >= 2t - 1");
  if (params.alpha < 0) throw DomainError("agreement_decode: α must be nonnegative");
  if (binomial(k, t) <= params.budget) {
    const auto measured = t_wagr(F, t, params.budget);
    if (*measured.exact < delta)
      throw DomainError("agreement_decode: measured " + std::to_string(t) + "-wise agreement " +
                        to_string(*measured.exact) + " is below δ = " + to_string(delta));
  }

  AgreementDecode out;
  AgreementReport& r = out.report;
  r.k = k;
  r.n = F.n();
  r.t = t;
  r.delta = delta;
  r.alpha = params.alpha;
  r.alpha_overridden = params.alpha_overridden;
  r.beta = delta / (4 * t * t);
  if (params.alpha > r.beta) throw DomainError("agreement_decode: need α <= β = δ/(4t^2)");
  r.k_large_enough = params.alpha > 0 && Fraction(k) * params.alpha >= 10 * t;

  TwoLevelOptions opts;
  opts.budget = params.budget;
  opts.zero = params.zero;
  opts.seed = params.seed;
  const RedBlueGraph G = build_two_level_graph(F, params.alpha, r.beta, t, opts);
  r.estimated = G.estimated;
  r.blue_count = G.blue_edges().size();
  r.red_count = G.red_edges().size();
  r.blue_threshold = r.beta * k * k;
  r.blue_ok = Fraction(r.blue_count) >= r.blue_threshold;
  r.proof_path_failed = !r.blue_ok;

  r.h = static_cast<std::uint64_t>(ceil(2 * params.alpha * k / (r.beta * r.beta)));
  r.rb_transitive = check_rb_transitive(G, r.h).holds;

  r.d = std::max<std::size_t>(1, static_cast<std::size_t>(ceil(delta * k / (8 * t * t))));
  r.mode = params.mode;
  if (r.mode == SearchMode::exact && binomial(k, r.d) > params.budget) r.mode = SearchMode::greedy;
  const auto sub = find_non_red_subgraph(G, r.d, r.mode, params.budget);
  r.density = sub.density;
  const Fraction t8 = Fraction(BigInt(t) * t * t * t * t * t * t * t);
  const Fraction slack = 2048 * t8 * params.alpha / (delta * delta * delta * delta);
  r.density_bound = 1 - slack;
  r.density_ok = r.density >= r.density_bound;

  auto maj = majority_decode(F, sub.vertices, {}, params.rho);
  r.rho = maj.rho;
  if (params.eta) {
    r.eta = *params.eta;
  } else {
    // Smallest η with disagr <= ρηn on every non-red pair of the subgraph.
    std::size_t worst = 0;
    for (std::size_t a = 0; a < sub.vertices.size(); ++a)
      for (std::size_t b = a + 1; b < sub.vertices.size(); ++b)
        if (!G.is_red(sub.vertices[a], sub.vertices[b]))
          worst = std::max(worst, disagr(F, sub.vertices[a], sub.vertices[b]));
    r.eta = r.rho > 0 ? Fraction(worst) / (r.rho * r.n) : Fraction(0);
  }
  r.mean_disagr = maj.mean_disagr;
  r.final_bound_squared = Fraction(r.n) * r.n * r.rho * (slack + r.eta);
  r.final_bound = std::sqrt(to_double(r.final_bound_squared));
  r.final_ok = sq_leq(r.mean_disagr, r.final_bound_squared);

  out.subcollection = sub.vertices;
  out.g = std::move(maj.g);
  return out;
}

FunctionCollection labeling_to_functions(const LabelCoverInstance& L, const LeftLabeling& sigma,
                                         std::size_t num_vars) {
  if (L.left_labels.size() != L.num_left())
    throw DomainError("labeling_to_functions: instance carries no partial-assignment labels");
  if (sigma.size() != L.num_left()) throw DomainError("labeling_to_functions: labeling has the wrong length");
  std::vector<IndexSet> sets;
  std::vector<std::vector<std::uint8_t>> values;
  for (std::size_t u = 0; u < L.num_left(); ++u) {
    if (sigma[u] >= L.left_alphabet(u)) throw DomainError("labeling_to_functions: label out of range");
    const auto& lab = L.left_labels[u];
    const std::uint64_t mask = lab.masks[sigma[u]];
    IndexSet s;
    std::vector<std::uint8_t> v;
    for (std::size_t j = 0; j < lab.vars.size(); ++j) {
      if (lab.vars[j] < 1 || lab.vars[j] > num_vars) throw DomainError("labeling_to_functions: variable out of range");
      s.push_back(lab.vars[j] - 1);
      v.push_back((mask >> j) & 1);
    }
    sets.push_back(std::move(s));
    values.push_back(std::move(v));
  }
  return FunctionCollection(SetSystem(num_vars, std::move(sets)), std::move(values));
}

AssignmentDecode decode_assignment(const CnfFormula& formula, const SetSystem& T, const LabelCoverInstance& L,
                                   const LeftLabeling& sigma, const DecodeParams& params) {
  const auto t = L.right_degree();
  if (!t) throw DomainError("decode_assignment: instance is not right-regular");
  if (T.num_sets() != L.num_left() || T.universe_size() != formula.num_clauses())
    throw DomainError("decode_assignment: T does not match the instance");
  const FunctionCollection F = labeling_to_functions(L, sigma, formula.num_vars());
  const auto agreement = t_wagr(F, *t, params.budget);
  if (*agreement.exact == 0) throw DomainError("decode_assignment: labeling has zero weak agreement");

  AssignmentDecode out;
  AssignmentReport& r = out.report;
  r.delta = *agreement.exact;
  auto dec = agreement_decode(F, *t, r.delta, params);
  r.agreement = dec.report;
  out.psi = Assignment::total(dec.g);
  r.value = clause_value(formula, out.psi);

  const std::size_t m = formula.num_clauses();
  if (params.gamma) {
    r.gamma = *params.gamma;
  } else {
    std::uint64_t members = 0;
    for (auto i : dec.subcollection) members += T.set(i).size();
    r.gamma = Fraction(members, 2 * static_cast<std::uint64_t>(m) * dec.subcollection.size());
  }
  if (r.gamma <= 0) throw DomainError("decode_assignment: γ must be positive");
  std::vector<IndexSet> chosen;
  for (auto i : dec.subcollection) chosen.push_back(T.set(i));
  const auto uni = is_uniform(SetSystem(m, std::move(chosen)), r.gamma, 0);
  r.mu = Fraction(uni.failing.size(), m);
  r.nu = r.agreement.mean_disagr / formula.num_vars();
  r.Delta = max_occurrence(formula);
  r.lemma_bound = 1 - r.mu - 3 * r.nu * r.Delta / r.gamma;
  r.lemma_ok = r.value >= r.lemma_bound;
  return out;
}

}  // namespace gapforge
