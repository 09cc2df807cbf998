#include "gapforge/generate.hpp"
#include "gapforge/rng.hpp"

#include <algorithm>
#include <numeric>

namespace gapforge::gen {

namespace {

/// Variables for each clause: widths spread evenly over the nΔ occurrence
/// slots, unused variables placed first, then the least-used ones.
std::vector<std::vector<std::uint32_t>> clause_variables(std::uint32_t n, std::size_t m, std::uint32_t Delta,
                                                         Rng& rng) {
  if (n == 0 || m == 0 || Delta == 0) throw DomainError("cnf generator: n, m and Δ must be positive");
  if (n > 3 * m) throw DomainError("cnf generator: too few clauses to use every variable");
  if (m > std::size_t{n} * Delta) throw DomainError("cnf generator: too many clauses for the occurrence bound");
  const std::size_t slots = std::min<std::size_t>(3 * m, std::size_t{n} * Delta);
  std::vector<std::uint32_t> unused(n);
  std::iota(unused.begin(), unused.end(), 1u);
  rng.shuffle(unused);
  std::vector<std::uint32_t> occ(n + 1, 0);
  std::vector<std::vector<std::uint32_t>> out(m);
  for (std::size_t c = 0; c < m; ++c) {
    const std::size_t width = slots / m + (c < slots % m ? 1 : 0);
    auto& vars = out[c];
    while (vars.size() < width && !unused.empty()) {
      vars.push_back(unused.back());
      unused.pop_back();
    }
    while (vars.size() < width) {
      // Candidates with the most remaining capacity, excluding vars already
      // in this clause.
      std::uint32_t best_occ = Delta;
      std::vector<std::uint32_t> cand;
      for (std::uint32_t v = 1; v <= n; ++v) {
        if (occ[v] >= Delta || std::find(vars.begin(), vars.end(), v) != vars.end()) continue;
        if (occ[v] < best_occ) {
          best_occ = occ[v];
          cand.clear();
        }
        if (occ[v] == best_occ) cand.push_back(v);
      }
      if (cand.empty()) break;
      vars.push_back(cand[rng.below(cand.size())]);
    }
    if (vars.empty()) throw DomainError("cnf generator: ran out of occurrence slots");
    for (auto v : vars) ++occ[v];
    std::sort(vars.begin(), vars.end());
  }
  return out;
}

}  // namespace

PlantedFormula planted_cnf(std::uint32_t n, std::size_t m, std::uint32_t Delta, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next() & 1);
  const auto vars = clause_variables(n, m, Delta, rng);
  std::vector<Clause> clauses;
  clauses.reserve(m);
  for (const auto& vs : vars) {
    Clause c;
    bool sat = false;
    for (auto v : vs) {
      const bool neg = rng.next() & 1;
      c.push_back({v, neg});
      sat = sat || (bits[v - 1] != neg);
    }
    if (!sat) {
      Literal& lit = c[rng.below(c.size())];
      lit.negated = !lit.negated;
    }
    clauses.push_back(std::move(c));
  }
  return {CnfFormula(n, std::move(clauses)), Assignment::total(std::move(bits))};
}

CnfFormula random_cnf(std::uint32_t n, std::size_t m, std::uint32_t Delta, std::uint64_t seed) {
  Rng rng(seed);
  const auto vars = clause_variables(n, m, Delta, rng);
  std::vector<Clause> clauses;
  for (const auto& vs : vars) {
    Clause c;
    for (auto v : vs) c.push_back({v, static_cast<bool>(rng.next() & 1)});
    clauses.push_back(std::move(c));
  }
  return CnfFormula(n, std::move(clauses));
}

LabelCoverInstance random_label_cover(std::size_t left, std::size_t t, Design design, std::uint64_t left_alphabet,
                                      std::uint64_t right_alphabet, bool planted, std::uint64_t seed) {
  if (t < 1 || t > left) throw DomainError("random_label_cover: need 1 <= t <= left");
  if (left_alphabet == 0 || right_alphabet == 0) throw DomainError("random_label_cover: empty alphabet");
  Rng rng(seed);
  std::vector<IndexSet> neighborhoods;
  if (design == Design::complete) {
    neighborhoods = combinations(static_cast<std::uint32_t>(left), static_cast<std::uint32_t>(t));
  } else {
    for (std::size_t i = 0; i < left; ++i) {
      IndexSet nb;
      for (std::size_t x = 0; x < t; ++x) nb.push_back(static_cast<std::uint32_t>((i + x) % left));
      std::sort(nb.begin(), nb.end());
      neighborhoods.push_back(std::move(nb));
    }
  }
  std::vector<std::uint64_t> hidden_left(left), hidden_right(neighborhoods.size());
  for (auto& a : hidden_left) a = rng.below(left_alphabet);
  for (auto& b : hidden_right) b = rng.below(right_alphabet);
  std::vector<LcEdge> edges;
  for (std::size_t v = 0; v < neighborhoods.size(); ++v) {
    for (auto u : neighborhoods[v]) {
      LcEdge e;
      e.left = u;
      e.right = static_cast<std::uint32_t>(v);
      e.projection.kind = Projection::Kind::table;
      e.projection.table.resize(left_alphabet);
      for (auto& x : e.projection.table) x = static_cast<std::uint32_t>(rng.below(right_alphabet));
      if (planted) e.projection.table[hidden_left[u]] = static_cast<std::uint32_t>(hidden_right[v]);
      edges.push_back(std::move(e));
    }
  }
  return LabelCoverInstance(std::vector<std::uint64_t>(left, left_alphabet),
                            std::vector<std::uint64_t>(neighborhoods.size(), right_alphabet), std::move(edges));
}

CoverageInstance random_coverage(std::size_t universe, std::size_t sets, std::size_t k, const Fraction& density,
                                 std::uint64_t seed) {
  Rng rng(seed);
  std::vector<IndexSet> out(sets);
  for (auto& s : out)
    for (std::uint32_t u = 0; u < universe; ++u)
      if (rng.bernoulli(density)) s.push_back(u);
  return CoverageInstance(universe, std::move(out), k);
}

PlantedCover planted_unique_cover(std::size_t universe, std::size_t k, std::size_t decoys, std::uint64_t seed) {
  if (k == 0 || k > universe) throw DomainError("planted_unique_cover: need 1 <= k <= universe");
  Rng rng(seed);
  std::vector<std::uint32_t> elems(universe);
  std::iota(elems.begin(), elems.end(), 0u);
  rng.shuffle(elems);
  std::vector<IndexSet> blocks(k);
  for (std::size_t x = 0; x < universe; ++x) blocks[x < k ? x : rng.below(k)].push_back(elems[x]);
  std::vector<std::pair<IndexSet, bool>> all;
  for (auto& b : blocks) {
    std::sort(b.begin(), b.end());
    all.emplace_back(std::move(b), true);
  }
  for (std::size_t d = 0; d < decoys; ++d) {
    IndexSet s;
    for (std::uint32_t u = 0; u < universe; ++u)
      if (rng.next() & 1) s.push_back(u);
    all.emplace_back(std::move(s), false);
  }
  rng.shuffle(all);
  PlantedCover out;
  std::vector<IndexSet> sets;
  for (std::size_t s = 0; s < all.size(); ++s) {
    if (all[s].second) out.cover.push_back(static_cast<std::uint32_t>(s));
    sets.push_back(std::move(all[s].first));
  }
  out.instance = CoverageInstance(universe, std::move(sets), k);
  return out;
}

MonotoneDnf random_dnf(std::size_t k, std::size_t ell, std::size_t size, std::size_t hub, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<IndexSet> pool = small_subcollections(k, ell);
  if (hub > 0) {
    if (hub > k) throw DomainError("random_dnf: hub larger than k");
    const auto H = rng.subset(static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(hub));
    std::erase_if(pool, [&](const IndexSet& term) {
      return std::none_of(term.begin(), term.end(), [&](std::uint32_t v) { return std::binary_search(H.begin(), H.end(), v); });
    });
  }
  if (pool.size() < size) throw DomainError("random_dnf: not enough distinct terms");
  std::vector<IndexSet> terms;
  for (auto x : rng.subset(static_cast<std::uint32_t>(pool.size()), static_cast<std::uint32_t>(size)))
    terms.push_back(pool[x]);
  return MonotoneDnf(k, std::move(terms));
}

FunctionCollection noisy_collection(std::size_t n, std::size_t k, const Fraction& p, const Fraction& corrupt,
                                    const Fraction& flip, std::uint64_t seed) {
  SetSystem system = sample_random_subsets(n, k, p, mix_seed(seed, 0));
  Rng rng(mix_seed(seed, 1));
  std::vector<std::uint8_t> g(n);
  for (auto& b : g) b = static_cast<std::uint8_t>(rng.next() & 1);
  std::vector<std::vector<std::uint8_t>> values(k);
  for (std::size_t i = 0; i < k; ++i) {
    const bool bad = rng.bernoulli(corrupt);
    for (auto u : system.set(i)) values[i].push_back(static_cast<std::uint8_t>(g[u] ^ (bad && rng.bernoulli(flip))));
  }
  return FunctionCollection(std::move(system), std::move(values));
}

}  // namespace gapforge::gen
