#include "gapforge/generate.hpp"
#include "gapforge/rng.hpp"
#include "gapforge/serial.hpp"
#include "gapforge/setsys.hpp"

#include "oracle.hpp"

#include <doctest.h>

using namespace gapforge;

namespace {

SetSystem copies(std::size_t U, std::size_t k, bool full) {
  std::vector<IndexSet> sets(k);
  if (full)
    for (auto& s : sets)
      for (std::uint32_t u = 0; u < U; ++u) s.push_back(u);
  return SetSystem(U, sets);
}

}  // namespace

TEST_SUITE("setsys") {
  TEST_CASE("set systems validate their sets") {
    CHECK_THROWS_AS(SetSystem(3, {{0, 3}}), DomainError);
    CHECK_THROWS_AS(SetSystem(3, {{1, 1}}), DomainError);
    const SetSystem s(4, {{3, 1}});
    CHECK(s.set(0) == IndexSet{1, 3});
  }

  TEST_CASE("sampling extremes and determinism") {
    CHECK(sample_random_subsets(10, 3, 0, 1) == copies(10, 3, false));
    CHECK(sample_random_subsets(10, 3, 1, 1) == copies(10, 3, true));
    const auto a = sample_random_subsets(10, 3, Fraction(1, 2), 42);
    CHECK(a == sample_random_subsets(10, 3, Fraction(1, 2), 42));
    CHECK(a.num_sets() == 3);
    // Frozen draw for seed 42.
    CHECK(write_setsys(a) == write_setsys(parse_setsys(write_setsys(a))));
  }

  TEST_CASE("uniformity") {
    const auto full = is_uniform(copies(5, 3, true), 1, 0);
    CHECK(full.uniform);
    CHECK(full.failing.empty());
    const auto empty = is_uniform(copies(5, 3, false), Fraction(1, 2), Fraction(1, 2));
    CHECK_FALSE(empty.uniform);
    CHECK(empty.failing == IndexSet{0, 1, 2, 3, 4});
    const auto toy = is_uniform(SetSystem(2, {{0, 1}, {1}}), 1, Fraction(1, 2));
    CHECK(toy.uniform);
    CHECK(toy.failing == IndexSet{0});
  }

  TEST_CASE("disperser examples") {
    const auto yes = is_strong_intersection_disperser(copies(6, 4, true), 2, 2, 0, CheckMode::exact, 1 << 20);
    CHECK(yes.kind == DisperserVerdictKind::certified_yes);
    const auto no = is_strong_intersection_disperser(copies(6, 4, false), 2, 1, Fraction(1, 2), CheckMode::exact, 1 << 20);
    CHECK(no.kind == DisperserVerdictKind::violated);
    CHECK(no.uncovered == 6);
    const SetSystem chain(4, {{0, 1}, {1, 2}, {2, 3}});
    const auto v = is_strong_intersection_disperser(chain, 2, 1, Fraction(1, 8), CheckMode::exact, 1 << 20);
    CHECK(v.kind == DisperserVerdictKind::violated);
    CHECK(v.witness == std::vector<IndexSet>{{0}, {1}});
    CHECK(v.uncovered == 1);
    const auto ok = is_strong_intersection_disperser(chain, 2, 1, Fraction(1, 4), CheckMode::exact, 1 << 20);
    CHECK(ok.kind == DisperserVerdictKind::certified_yes);  // every pair misses at most one element
  }

  TEST_CASE("disperser budget and heuristic") {
    const auto sys = sample_random_subsets(12, 6, Fraction(1, 2), 3);
    CHECK_THROWS_AS(is_strong_intersection_disperser(sys, 3, 2, 0, CheckMode::exact, 10), BudgetExceeded);
    const auto h = is_strong_intersection_disperser(copies(6, 4, true), 2, 2, 0, CheckMode::heuristic, 1 << 20);
    CHECK(h.kind == DisperserVerdictKind::inconclusive);
    const auto hv = is_strong_intersection_disperser(copies(6, 4, false), 2, 2, 0, CheckMode::heuristic, 1 << 20);
    CHECK(hv.kind == DisperserVerdictKind::violated);
  }

  TEST_CASE("disperser oracle equivalence and monotonicity") {
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
      Rng rng(seed);
      const std::size_t k = 1 + rng.below(6), U = 1 + rng.below(12), ell = 1 + rng.below(2), r = 1 + rng.below(3);
      const Fraction eta(rng.below(5), 8);
      const auto sys = sample_random_subsets(U, k, Fraction(1 + rng.below(3), 4), seed);
      const auto a = is_strong_intersection_disperser(sys, r, ell, eta, CheckMode::exact, 1 << 22);
      const auto b = serial::strong_disperser(sys, r, ell, eta, 1 << 22);
      CHECK(a.kind == b.kind);
      CHECK(a.witness == b.witness);
      if (a.kind == DisperserVerdictKind::certified_yes) {
        CHECK(is_strong_intersection_disperser(sys, r, ell, eta + Fraction(1, 4), CheckMode::exact, 1 << 22).kind ==
              DisperserVerdictKind::certified_yes);
        CHECK(is_strong_intersection_disperser(sys, r + 1, ell, eta, CheckMode::exact, 1 << 22).kind ==
              DisperserVerdictKind::certified_yes);
      }
      if (a.kind == DisperserVerdictKind::violated) {
        // The witness really leaves that many elements uncovered.
        std::set<std::uint32_t> covered;
        for (const auto& sub : a.witness) {
          auto inter = oracle::as_set(sys.set(sub[0]));
          for (auto i : sub) inter = oracle::meet(inter, oracle::as_set(sys.set(i)));
          covered.insert(inter.begin(), inter.end());
        }
        CHECK(U - covered.size() == a.uncovered);
        CHECK(Fraction(a.uncovered) > eta * U);
      }
    }
  }

  TEST_CASE("size and pairwise checkers") {
    CHECK(pairwise_intersection_max(SetSystem(4, {{0, 1}, {2, 3}})) == 0);
    CHECK(pairwise_intersection_max(SetSystem(4, {{0, 1, 2}, {0, 1, 2}})) == 3);
    CHECK(pairwise_intersection_max(SetSystem(6, {{0, 1, 2}, {1, 2, 3}, {5}})) == 2);
    CHECK_THROWS_AS(pairwise_intersection_max(SetSystem(4, {{0}})), DomainError);
    CHECK(max_set_size(copies(5, 3, false)) == 0);
    CHECK(max_set_size(sample_random_subsets(9, 2, 1, 0)) == 9);
    CHECK(max_set_size(SetSystem(2, {{0}, {0, 1}})) == 2);
    CHECK(max_set_size(SetSystem(2, {})) == 0);
  }

  TEST_CASE("restrict_to_pair relabels the common part") {
    const SetSystem s(6, {{0, 1, 2, 3}, {1, 2, 3, 5}, {2, 5}, {1, 3, 4}});
    const auto r = restrict_to_pair(s, 0, 1);
    CHECK(r.universe_size() == 3);  // {1, 2, 3}
    CHECK(r.num_sets() == 2);
    CHECK(r.set(0) == IndexSet{1});
    CHECK(r.set(1) == IndexSet{0, 2});
  }

  TEST_CASE("dnf examples") {
    for (const Fraction& p : {Fraction(1, 10), Fraction(1, 3), Fraction(1, 2)}) {
      CHECK(*dnf_false_prob(MonotoneDnf(3, {{0}}), p, 1 << 20).exact == 1 - p);
      CHECK(*dnf_false_prob(MonotoneDnf(5, {{0}, {1}, {2}, {3}}), p, 1 << 20).exact == power(1 - p, 4));
    }
    CHECK(*dnf_false_prob(MonotoneDnf(2, {{0, 1}}), Fraction(1, 2), 1 << 20).exact == Fraction(3, 4));
    CHECK_THROWS_AS(dnf_false_prob(MonotoneDnf(12, {{0}}), Fraction(1, 2), 100), BudgetExceeded);
  }

  TEST_CASE("dnf construction rules") {
    CHECK_THROWS_AS(MonotoneDnf(3, {{0}, {0}}), DomainError);
    CHECK_THROWS_AS(MonotoneDnf(3, {{}}), DomainError);
    const MonotoneDnf always(3, {{}}, true);
    CHECK(*dnf_false_prob(always, Fraction(1, 2), 100).exact == 0);
    const auto f = dnf_from_subcollections(3, {{0}, {1}});
    CHECK(f.terms() == std::vector<IndexSet>{{0}, {1}});
    CHECK(dnf_from_subcollections(3, {{0, 1}}).width() == 2);
    const auto g = dnf_from_subcollections(3, {{0, 1}, {2}});
    CHECK(g.evaluate({1, 1, 0}));
    CHECK_FALSE(g.evaluate({0, 0, 0}));
    CHECK_THROWS_AS(dnf_from_subcollections(3, {{2}, {2}}), DomainError);
    CHECK(parse_dnf(write_dnf(g)).terms() == g.terms());
  }

  TEST_CASE("dnf false probability matches the naive sum") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const std::size_t k = 2 + seed % 9, ell = 1 + seed % 3;
      const std::size_t hub = seed % 2;
      // Terms meeting a one-variable hub: all terms minus those avoiding it.
      std::uint64_t pool = 0;
      for (std::size_t w = 1; w <= std::min(ell, k); ++w) pool += binomial(k, w) - (hub ? binomial(k - 1, w) : 0);
      const auto f = gen::random_dnf(k, ell, 1 + seed % std::min<std::uint64_t>(pool, 8), hub, seed);
      const Fraction p(1 + seed % 4, 5);
      CHECK(*dnf_false_prob(f, p, 1 << 20).exact == oracle::dnf_false_prob(f, p));
      CHECK(dnf_false_counts(f, 1 << 20) == serial::dnf_false_counts(f, 1 << 20));
    }
  }

  TEST_CASE("dnf Monte-Carlo records its seed and lands near the exact value") {
    const auto f = gen::random_dnf(10, 2, 12, 0, 5);
    const auto mc = dnf_false_prob(f, Fraction(3, 10), MonteCarlo{20000, 9});
    CHECK(mc.estimated);
    CHECK(mc.trials == 20000);
    CHECK(mc.seed == 9);
    const double exact = to_double(*dnf_false_prob(f, Fraction(3, 10), 1 << 20).exact);
    CHECK(mc.value == doctest::Approx(exact).epsilon(0.05));
    CHECK(dnf_false_prob(f, Fraction(3, 10), MonteCarlo{20000, 9}).value == mc.value);
  }

  TEST_CASE("union of intersections equals the DNF on membership vectors") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      Rng rng(seed);
      const std::size_t k = 2 + rng.below(5);
      const auto sys = sample_random_subsets(10, k, Fraction(1, 2), seed);
      auto subs = small_subcollections(k, 2);
      rng.shuffle(subs);
      subs.resize(1 + rng.below(std::min<std::size_t>(subs.size(), 4)));
      const auto f = dnf_from_subcollections(k, subs);
      for (std::uint32_t u = 0; u < 10; ++u) {
        std::vector<std::uint8_t> x(k);
        for (std::size_t i = 0; i < k; ++i) x[i] = oracle::as_set(sys.set(i)).count(u);
        bool in = false;
        for (const auto& sub : subs) {
          auto inter = oracle::as_set(sys.set(sub[0]));
          for (auto i : sub) inter = oracle::meet(inter, oracle::as_set(sys.set(i)));
          in = in || inter.count(u);
        }
        CHECK(f.evaluate(x) == in);
      }
    }
  }

  TEST_CASE("sampled-property report") {
    SampledCheckParams params;
    params.r = 1;
    params.ell = 1;
    params.eta = Fraction(1, 2);
    params.mu = Fraction(1, 10);
    const auto zero = check_sampled_properties(sample_random_subsets(20, 4, 0, 1), 0, 3, 10, params, 1 << 20);
    CHECK(zero.size_ok);
    CHECK(zero.pairwise_ok);
    CHECK(zero.uniformity.uniform);
    const auto one = check_sampled_properties(sample_random_subsets(20, 4, 1, 1), 1, 3, 10, params, 1 << 20);
    CHECK(one.max_size == 20);
    CHECK(one.size_ok);
    const auto sys = sample_random_subsets(60, 6, Fraction(2, 5), 11);
    const auto a = check_sampled_properties(sys, Fraction(2, 5), 3, 20, params, 1 << 20);
    const auto b = check_sampled_properties(sys, Fraction(2, 5), 3, 20, params, 1 << 20);
    CHECK(a.max_size == b.max_size);
    CHECK(a.uniformity.failing == b.uniformity.failing);
    CHECK(a.dispersers.size() == 15);
    std::size_t mx = 0, pair = 0;
    for (std::size_t i = 0; i < 6; ++i) {
      mx = std::max(mx, sys.set(i).size());
      for (std::size_t j = i + 1; j < 6; ++j)
        pair = std::max(pair, oracle::meet(oracle::as_set(sys.set(i)), oracle::as_set(sys.set(j))).size());
    }
    CHECK(a.max_size == mx);
    CHECK(a.max_pairwise == pair);
    CHECK(a.size_bound == Fraction(2 * 2 * 60, 5));
    CHECK(a.gamma == Fraction(1, 5));
  }
}
