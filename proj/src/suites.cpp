#include "gapforge/suites.hpp"

#include "gapforge/agreement.hpp"
#include "gapforge/downstream.hpp"
#include "gapforge/generate.hpp"
#include "gapforge/labelcover.hpp"
#include "gapforge/rng.hpp"
#include "gapforge/serial.hpp"
#include "gapforge/setsys.hpp"
#include "gapforge/solvers.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace gapforge {

std::string_view to_string(SuiteStatus status) {
  switch (status) {
    case SuiteStatus::pass: return "pass";
    case SuiteStatus::fail: return "fail";
    case SuiteStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

bool dnf_lemma_bound_holds(const Fraction& prob, std::size_t ell, const Fraction& p, const Fraction& eps,
                           std::size_t k) {
  // prob <= ell (1-p)^(a/b)  <=>  (prob/ell)^b <= (1-p)^a, both sides in [0, 1].
  const Fraction e = eps * k / ell;
  const auto a = numerator(e);
  const auto b = denominator(e);
  if (a > 4096 || b > 4096) throw DomainError("dnf_lemma_bound_holds: exponent too large for exact comparison");
  const Fraction lhs = power(prob / ell, static_cast<std::uint64_t>(b));
  const Fraction rhs = power(Fraction(1) - p, static_cast<std::uint64_t>(a));
  return lhs <= rhs;
}

bool greedy_ratio_beats_e(std::size_t k) {
  // 2.7182818284590452354 > e, so (1-1/k)^k * e_hi <= 1 implies the claim.
  const Fraction e_hi(BigInt("27182818284590452354"), BigInt("10000000000000000000"));
  return (Fraction(1) - greedy_ratio(k)) * e_hi <= 1;
}

namespace {

struct Ctx {
  SuiteReport& report;
  const SuiteOptions& opt;
  std::map<std::string, std::uint64_t> counters;

  /// Runs one case; a budget refusal marks it inconclusive.
  void run(const std::function<void(std::uint64_t)>& body) {
    const std::uint64_t idx = report.cases++;
    try {
      body(mix_seed(opt.seed, idx));
    } catch (const BudgetExceeded&) {
      ++report.inconclusive;
    }
  }

  void check(bool ok, const std::function<std::string()>& repro) {
    if (ok) return;
    ++report.violations;
    if (report.repro.empty()) report.repro = repro();
  }

  void count(const std::string& key, std::uint64_t by = 1) { counters[key] += by; }
};

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

template <typename T>
const T& pick_of(Rng& rng, const std::vector<T>& items) {
  return items[rng.below(items.size())];
}

std::string join(const std::vector<std::uint64_t>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << xs[i];
  return os.str();
}

// ---------------------------------------------------------------------------

void suite_monotone_dnf(Ctx& ctx) {
  const std::size_t kmax = std::min<std::size_t>(16, 8 + 2 * ctx.opt.scale);
  const std::vector<Fraction> eps = {Fraction(1, 4), Fraction(1, 2)};
  const std::vector<Fraction> ps = {Fraction(1, 10), Fraction(3, 10), Fraction(1, 2)};
  const std::size_t cases = 60 * ctx.opt.scale;
  for (std::size_t c = 0; c < cases; ++c) {
    ctx.run([&](std::uint64_t seed) {
      Rng rng(seed);
      const std::size_t k = pick(rng, 2, kmax);
      const std::size_t ell = pick(rng, 1, 3);
      const Fraction e = pick_of(rng, eps);
      const Fraction p = pick_of(rng, ps);
      const auto size = static_cast<std::size_t>(gapforge::ceil(e * power(Fraction(k), ell)));
      std::uint64_t pool = 0;
      for (std::size_t w = 1; w <= std::min(ell, k); ++w) pool += binomial(k, w);
      if (size > pool) {
        ctx.count("vacuous (fewer than εk^ℓ candidate terms)");
        return;
      }
      // Every other case concentrates terms on a small hub of variables,
      // which is the near-extremal shape for the false probability.
      std::size_t hub = 0;
      if (c % 2 == 1) {
        for (std::size_t h = 1; h <= k; ++h) {
          std::uint64_t hub_pool = pool;
          for (std::size_t w = 1; w <= std::min(ell, k - h); ++w) hub_pool -= binomial(k - h, w);
          if (hub_pool >= size) {
            hub = h;
            break;
          }
        }
      }
      const MonotoneDnf f = gen::random_dnf(k, ell, size, hub, mix_seed(seed, 1));
      const auto prob = *dnf_false_prob(f, p, ctx.opt.budget).exact;
      ctx.count("dnfs checked");
      ctx.check(dnf_lemma_bound_holds(prob, ell, p, e, k), [&] {
        return "p=" + to_string(p) + " eps=" + to_string(e) + " ell=" + std::to_string(ell) +
               " false_prob=" + to_string(prob) + "\n" + write_dnf(f);
      });
      // The superset sweep must agree with direct evaluation.
      const auto counts = dnf_false_counts(f, ctx.opt.budget);
      const auto direct = serial::dnf_false_counts(f, ctx.opt.budget);
      ctx.check(counts == direct, [&] { return "false counts differ: " + join(counts) + " vs " + join(direct) + "\n" + write_dnf(f); });
    });
  }
}

void suite_rb_transitivity(Ctx& ctx) {
  const std::vector<Fraction> alphas = {Fraction(2, 5), Fraction(1, 2), Fraction(3, 5), Fraction(4, 5)};
  const std::size_t cases = 12 * ctx.opt.scale;
  const std::size_t t = 2;
  for (std::size_t c = 0; c < cases; ++c) {
    ctx.run([&](std::uint64_t seed) {
      Rng rng(seed);
      const Fraction alpha = pick_of(rng, alphas);
      const std::vector<Fraction> betas = {alpha, (alpha + 1) / 2, Fraction(1)};
      const Fraction beta = pick_of(rng, betas);
      const auto kmin = static_cast<std::size_t>(gapforge::ceil(Fraction(10 * t) / alpha));
      const std::size_t k = kmin + pick(rng, 0, 4);
      const std::size_t n = pick(rng, 12, 40);
      const auto F = gen::noisy_collection(n, k, Fraction(pick(rng, 3, 7), 10), Fraction(1, 3), Fraction(1, 4),
                                           mix_seed(seed, 1));
      TwoLevelOptions o;
      o.budget = ctx.opt.budget;
      o.seed = seed;
      RedBlueGraph G;
      try {
        G = build_two_level_graph(F, alpha, beta, t, o);
      } catch (const RedBlueOverlap& e) {
        ctx.check(false, [&] { return std::string(e.what()) + "\n" + write_funcs(F); });
        return;
      }
      const auto h = static_cast<std::uint64_t>(gapforge::ceil(2 * alpha * k / (beta * beta)));
      const auto res = check_rb_transitive(G, h);
      ctx.count("red edges", G.red_edges().size());
      ctx.count("blue edges", G.blue_edges().size());
      ctx.check(res.holds, [&] {
        return "alpha=" + to_string(alpha) + " beta=" + to_string(beta) + " h=" + std::to_string(h) +
               " red edge {" + std::to_string(res.witness->u) + "," + std::to_string(res.witness->v) +
               "} common blue=" + std::to_string(res.witness->common_blue) + "\n" + write_funcs(F);
      });
    });
  }
}

void suite_majority_bound(Ctx& ctx) {
  const std::size_t cases = 40 * ctx.opt.scale;
  for (std::size_t c = 0; c < cases; ++c) {
    ctx.run([&](std::uint64_t seed) {
      Rng rng(seed);
      const std::size_t n = pick(rng, 10, 200);
      const std::size_t k = pick(rng, 2, 12);
      const auto F = gen::noisy_collection(n, k, Fraction(pick(rng, 2, 8), 10), Fraction(pick(rng, 0, 3), 4),
                                           Fraction(pick(rng, 1, 5), 10), mix_seed(seed, 1));
      IndexSet sub;
      for (std::uint32_t i = 0; i < k; ++i)
        if (c % 2 == 0 || rng.next() % 3 != 0) sub.push_back(i);
      if (sub.empty()) sub.push_back(0);
      const auto M = majority_decode(F, sub);
      ctx.count("zeta checks", M.checks.size());
      bool ok = M.power_mean_holds;
      for (const auto& z : M.checks) ok = ok && z.holds && z.upper_holds;
      ctx.check(ok, [&] {
        std::string s = "subcollection size " + std::to_string(sub.size()) + " mean=" + to_string(M.mean_disagr) +
                        " pair_mean=" + to_string(M.pair_mean) + " rho=" + to_string(M.rho) + "\n";
        return s + write_funcs(F);
      });
    });
  }
}

void suite_partition_identity(Ctx& ctx) {
  const std::size_t tmax = 2 + ctx.opt.scale;
  const std::size_t lmax = 3 + ctx.opt.scale;
  for (std::size_t t = 2; t <= tmax; ++t) {
    for (std::size_t labels = 1; labels <= lmax; ++labels) {
      ctx.run([&](std::uint64_t) {
        const PartitionSystem P(labels, t, ctx.opt.budget);
        const auto repro = [&] { return "t=" + std::to_string(t) + " labels=" + std::to_string(labels); };
        // Each partition covers every element exactly once.
        for (std::size_t a = 0; a < labels; ++a) {
          std::vector<std::uint32_t> mult(P.size(), 0);
          for (std::size_t j = 0; j < t; ++j) {
            const auto part = P.part(a, j);
            ctx.check(part.size() == P.size() / t, repro);
            for (auto e : part) ++mult[e];
          }
          ctx.check(std::all_of(mult.begin(), mult.end(), [](std::uint32_t m) { return m == 1; }), repro);
        }
        // s parts from pairwise distinct partitions leave ((t-1)/t)^s uncovered.
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << labels); ++mask) {
          std::vector<std::size_t> chosen;
          for (std::size_t a = 0; a < labels; ++a)
            if (mask >> a & 1) chosen.push_back(a);
          const std::size_t s = chosen.size();
          std::vector<std::size_t> j(s, 0);
          while (true) {
            std::vector<std::pair<std::size_t, std::size_t>> parts;
            for (std::size_t x = 0; x < s; ++x) parts.emplace_back(chosen[x], j[x]);
            const Fraction covered = 1 - Fraction(uncovered_by_parts(P, parts), P.size());
            const Fraction expected = 1 - power(Fraction(t - 1, t), s);
            ctx.count("part tuples");
            ctx.check(covered == expected, [&] { return repro() + " s=" + std::to_string(s) + " coverage=" + to_string(covered); });
            std::size_t x = 0;
            while (x < s && ++j[x] == t) j[x++] = 0;
            if (x == s) break;
          }
        }
      });
    }
  }
}

/// Feige completeness on one satisfiable instance with a known labeling.
void check_feige(Ctx& ctx, const LabelCoverInstance& L, const LeftLabeling& sigma, std::uint64_t universe_cap,
                 const std::function<std::string()>& describe) {
  const auto R = feige_coverage_reduction(L, universe_cap);
  const auto chosen = labeling_sets(R, sigma);
  ctx.check(verify_unique_cover(R.instance, chosen), [&] { return "labeling sets are not a unique cover\n" + describe(); });
  const auto best = exact_min_set_cover(R.instance, ctx.opt.budget);
  ctx.check(best && best->sets.size() == R.instance.k(), [&] {
    return "min set cover " + (best ? std::to_string(best->sets.size()) : std::string("none")) + " != k=" +
           std::to_string(R.instance.k()) + "\n" + describe();
  });
  ctx.check(R.instance.k() == L.num_left(), [&] { return "parameter not preserved\n" + describe(); });
  ctx.count("feige universe elements", R.instance.universe());
}

void suite_pipeline_completeness(Ctx& ctx) {
  const std::size_t cases = 10 * ctx.opt.scale;
  const std::uint64_t cap = std::uint64_t{1} << 12;
  for (std::size_t c = 0; c < cases; ++c) {
    ctx.run([&](std::uint64_t seed) {
      Rng rng(seed);
      if (c % 2 == 0) {
        // Planted table instance straight into the coverage reduction.
        const std::size_t t = pick(rng, 2, 3);
        const std::size_t left = pick(rng, t, 4);
        const auto L = gen::random_label_cover(left, t, gen::Design::cyclic, pick(rng, 1, 3), pick(rng, 1, 3), true,
                                               mix_seed(seed, 1));
        const auto opt = brute_force_val(L, ctx.opt.budget);
        ctx.check(opt.value == 1, [&] { return "planted instance not satisfiable\n" + write_label_cover_json(L); });
        check_feige(ctx, L, opt.labeling.left, cap, [&] { return write_label_cover_json(L); });
        return;
      }
      // Formula -> main reduction -> alphabet reduction -> coverage. Draws
      // are retried (deterministically) until the coverage universe is small.
      for (std::uint64_t attempt = 0;; ++attempt) {
        ctx.count("formula draws");
        const std::uint64_t s = mix_seed(seed, 100 + attempt);
        Rng r(s);
        const auto n = static_cast<std::uint32_t>(pick(r, 3, 6));
        const std::size_t m = pick(r, (n + 2) / 3, 2 * n);
        const auto pf = gen::planted_cnf(n, m, 3, mix_seed(s, 1));
        const auto T = sample_random_subsets(m, 3, Fraction(1, 3), mix_seed(s, 2));
        const auto L = build_main_reduction(pf.formula, T, 2);
        const auto sigma = restricted_labeling(L, pf.planted);
        const auto describe = [&] { return write_dimacs(pf.formula) + write_setsys(T); };
        ctx.check(labeling_value(L, sigma) == 1, [&] { return "restricted labeling value below 1\n" + describe(); });
        ctx.check(weak_agreement_value(L, sigma.left) == 1, [&] { return "restricted labeling wval below 1\n" + describe(); });
        const auto A = reduce_alphabet(L, Fraction(1), ctx.opt.budget);
        ctx.check(labeling_value(A.instance, extend_optimally(A.instance, sigma.left)) == 1,
                  [&] { return "alphabet reduction lost completeness\n" + describe(); });
        try {
          check_feige(ctx, A.instance, sigma.left, cap, describe);
        } catch (const BudgetExceeded&) {
          continue;
        }
        return;
      }
    });
  }
}

void suite_disperser_oracle(Ctx& ctx) {
  const std::size_t cases = 100 * ctx.opt.scale;
  const std::vector<Fraction> etas = {Fraction(0), Fraction(1, 8), Fraction(1, 4), Fraction(1, 2)};
  const std::vector<Fraction> ps = {Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)};
  for (std::size_t c = 0; c < cases; ++c) {
    ctx.run([&](std::uint64_t seed) {
      Rng rng(seed);
      const std::size_t k = pick(rng, 1, 6);
      const std::size_t U = pick(rng, 1, 12);
      const std::size_t ell = pick(rng, 1, 2);
      const std::size_t r = pick(rng, 1, 3);
      const Fraction eta = pick_of(rng, etas);
      const auto sys = sample_random_subsets(U, k, pick_of(rng, ps), mix_seed(seed, 1));
      const auto describe = [&] {
        return "r=" + std::to_string(r) + " ell=" + std::to_string(ell) + " eta=" + to_string(eta) + "\n" +
               write_setsys(sys);
      };
      const auto fast = is_strong_intersection_disperser(sys, r, ell, eta, CheckMode::exact, ctx.opt.budget);
      const auto slow = serial::strong_disperser(sys, r, ell, eta, ctx.opt.budget);
      ctx.count(std::string("verdict ") + std::string(to_string(fast.kind)));
      ctx.check(fast.kind == slow.kind && fast.witness == slow.witness && fast.uncovered == slow.uncovered,
                [&] { return "exact checker disagrees with the materializer\n" + describe(); });
      // The greedy heuristic may only refute, and its witness must be real.
      const auto greedy = is_strong_intersection_disperser(sys, r, ell, eta, CheckMode::heuristic, ctx.opt.budget);
      if (greedy.kind == DisperserVerdictKind::violated) {
        ctx.check(fast.kind == DisperserVerdictKind::violated, [&] { return "heuristic refuted a certified system\n" + describe(); });
      }
      ctx.check(greedy.kind != DisperserVerdictKind::certified_yes, [&] { return "heuristic certified\n" + describe(); });
      // Monotone in η, and certification at r - 1 carries to r (a larger
      // union can only miss less).
      if (fast.kind == DisperserVerdictKind::certified_yes) {
        const auto looser = is_strong_intersection_disperser(sys, r, ell, eta + Fraction(1, 8), CheckMode::exact, ctx.opt.budget);
        ctx.check(looser.kind == DisperserVerdictKind::certified_yes, [&] { return "not monotone in eta\n" + describe(); });
      }
      if (r > 1) {
        const auto fewer = is_strong_intersection_disperser(sys, r - 1, ell, eta, CheckMode::exact, ctx.opt.budget);
        if (fewer.kind == DisperserVerdictKind::certified_yes)
          ctx.check(fast.kind == DisperserVerdictKind::certified_yes, [&] { return "not monotone in r\n" + describe(); });
      }
      // DNF view: u is in the union of intersections iff f(membership of u).
      auto subs = small_subcollections(k, ell);
      rng.shuffle(subs);
      subs.resize(std::min<std::size_t>(subs.size(), r));
      const auto f = dnf_from_subcollections(k, subs);
      for (std::uint32_t u = 0; u < U; ++u) {
        std::vector<std::uint8_t> x(k);
        for (std::size_t i = 0; i < k; ++i) x[i] = std::binary_search(sys.set(i).begin(), sys.set(i).end(), u);
        bool in_union = false;
        for (const auto& sub : subs)
          in_union = in_union || std::all_of(sub.begin(), sub.end(), [&](std::uint32_t i) { return x[i] != 0; });
        ctx.check(f.evaluate(x) == in_union, [&] { return "DNF view disagrees at element " + std::to_string(u) + "\n" + describe(); });
      }
    });
  }
}

void suite_wval_bridge(Ctx& ctx) {
  const std::size_t cases = 30 * ctx.opt.scale;
  for (std::size_t c = 0; c < cases; ++c) {
    ctx.run([&](std::uint64_t seed) {
      Rng rng(seed);
      const std::size_t t = pick(rng, 2, 3);
      const std::size_t left = pick(rng, t, t + 2);
      const auto design = rng.next() & 1 ? gen::Design::cyclic : gen::Design::complete;
      const auto L = gen::random_label_cover(left, t, design, pick(rng, 2, 3), pick(rng, 2, 3), c % 3 == 0,
                                             mix_seed(seed, 1));
      const auto total = left_labeling_count(L);
      require_budget("wval-bridge", total, ctx.opt.budget);
      LeftLabeling sigma(left, 0);
      for (std::uint64_t i = 0; i < total; ++i) {
        const Fraction w = weak_agreement_value(L, sigma);
        const Fraction v = labeling_value(L, extend_optimally(L, sigma));
        ctx.count("labelings");
        ctx.check(v <= wval_to_val_bound(w, t), [&] {
          return "val " + to_string(v) + " above bound for wval " + to_string(w) + "\n" + write_label_cover_json(L);
        });
        for (std::size_t u = left; u-- > 0;) {
          if (++sigma[u] < L.left_alphabet(u)) break;
          sigma[u] = 0;
        }
      }
      const auto pv = brute_force_val(L, ctx.opt.budget);
      const auto sv = serial::brute_force_val(L, ctx.opt.budget);
      const auto pw = brute_force_wval(L, ctx.opt.budget);
      const auto sw = serial::brute_force_wval(L, ctx.opt.budget);
      ctx.check(pv.value == sv.value && pv.labeling.left == sv.labeling.left && pw.value == sw.value &&
                    pw.labeling.left == sw.labeling.left,
                [&] { return "parallel and serial brute force disagree\n" + write_label_cover_json(L); });
    });
  }
}

void suite_guha_khuller(Ctx& ctx) {
  const std::size_t cases = 20 * ctx.opt.scale;
  for (std::size_t c = 0; c < cases; ++c) {
    ctx.run([&](std::uint64_t seed) {
      Rng rng(seed);
      const std::size_t U = pick(rng, 2, 12);
      const std::size_t S = pick(rng, 2, 8);
      const std::size_t k = pick(rng, 1, std::min<std::size_t>(3, S));
      const auto I = gen::random_coverage(U, S, k, Fraction(pick(rng, 1, 3), 5), mix_seed(seed, 1));
      const auto C = guha_khuller_reduction(I);
      const auto describe = [&] { return write_coverage(I); };
      ctx.check(!find_triangle_violation(C), [&] { return "triangle inequality fails\n" + describe(); });
      ctx.check(C.k() == I.k(), [&] { return "parameter not preserved\n" + describe(); });
      const auto best = exact_max_coverage(I, ctx.opt.budget);
      const Fraction tau = 1 - Fraction(best.covered, U);
      const auto med = exact_kmedian(C, ctx.opt.budget);
      const auto mean = exact_kmean(C, ctx.opt.budget);
      if (C.degenerate) ctx.count("degenerate instances");
      ctx.check(Fraction(med.cost) == U * (1 + 2 * tau), [&] { return "k-median " + std::to_string(med.cost) + "\n" + describe(); });
      ctx.check(Fraction(mean.cost) == U * (1 + 8 * tau), [&] { return "k-mean " + std::to_string(mean.cost) + "\n" + describe(); });
      ctx.check(mean.cost >= med.cost, [&] { return "k-mean below k-median\n" + describe(); });
      const auto smed = serial::exact_clustering(C, 1, ctx.opt.budget);
      ctx.check(smed.cost == med.cost && smed.facilities == med.facilities,
                [&] { return "parallel and serial k-median disagree\n" + describe(); });
    });
  }
}

void suite_abss(Ctx& ctx) {
  const std::size_t complete_cases = 20 * ctx.opt.scale;
  const std::size_t sound_cases = 10 * ctx.opt.scale;
  for (std::size_t c = 0; c < complete_cases + sound_cases; ++c) {
    ctx.run([&](std::uint64_t seed) {
      const bool completeness = c < complete_cases;
      for (std::uint64_t attempt = 0;; ++attempt) {
        const std::uint64_t s = mix_seed(seed, attempt);
        Rng rng(s);
        CoverageInstance I;
        std::size_t threshold = 0;
        if (completeness) {
          const std::size_t k = pick(rng, 1, 3);
          const std::size_t U = pick(rng, k, 7);
          I = gen::planted_unique_cover(U, k, pick(rng, 0, 6 - k), mix_seed(s, 1)).instance;
          const auto best = exact_min_set_cover(I, ctx.opt.budget);
          if (!best || best->sets.size() != k) continue;  // a decoy gives a smaller cover
          threshold = k;
        } else {
          threshold = pick(rng, 1, 2);
          I = gen::random_coverage(pick(rng, 3, 8), pick(rng, 2, 6), threshold, Fraction(1, 3), mix_seed(s, 1));
          const auto best = exact_min_set_cover(I, ctx.opt.budget);
          if (best && best->sets.size() <= threshold) continue;
        }
        const std::size_t L = threshold + 1;
        const unsigned p = 1 + static_cast<unsigned>(rng.next() & 1);
        const auto code = abss_ncp_reduction(I, threshold, L);
        const auto lat = abss_cvp_reduction(I, threshold, L, p);
        const auto ncp = exact_ncp(code, ctx.opt.budget);
        const auto cvp = exact_cvp(lat, static_cast<std::int64_t>(threshold) + 1, ctx.opt.budget);
        const auto describe = [&] {
          return std::string(completeness ? "completeness" : "soundness") + " threshold=" + std::to_string(threshold) +
                 " p=" + std::to_string(p) + "\n" + write_coverage(I);
        };
        if (completeness) {
          ctx.check(ncp.cost == I.k(), [&] { return "NCP optimum " + std::to_string(ncp.cost) + "\n" + describe(); });
          ctx.check(cvp.cost == I.k(), [&] { return "CVP optimum " + cvp.cost.str() + "\n" + describe(); });
        } else {
          ctx.check(ncp.cost > threshold, [&] { return "NCP optimum " + std::to_string(ncp.cost) + "\n" + describe(); });
          ctx.check(cvp.cost > threshold, [&] { return "CVP optimum " + cvp.cost.str() + "\n" + describe(); });
        }
        const auto sn = serial::exact_ncp(code, ctx.opt.budget);
        ctx.check(sn.cost == ncp.cost && sn.x == ncp.x, [&] { return "parallel and serial NCP disagree\n" + describe(); });
        ctx.count(completeness ? "completeness instances" : "soundness instances");
        return;
      }
    });
  }
}

void suite_greedy_guarantee(Ctx& ctx) {
  const std::size_t cases = 40 * ctx.opt.scale;
  for (std::size_t c = 0; c < cases; ++c) {
    ctx.run([&](std::uint64_t seed) {
      Rng rng(seed);
      const std::size_t S = pick(rng, 1, 10);
      const std::size_t k = pick(rng, 1, std::min<std::size_t>(4, S));
      const auto I = gen::random_coverage(pick(rng, 1, 16), S, k, Fraction(pick(rng, 1, 4), 6), mix_seed(seed, 1));
      const auto g = greedy_max_coverage(I);
      const auto e = exact_max_coverage(I, ctx.opt.budget);
      const auto describe = [&] { return write_coverage(I); };
      ctx.check(Fraction(g.covered) >= greedy_ratio(k) * e.covered, [&] {
        return "greedy " + std::to_string(g.covered) + " exact " + std::to_string(e.covered) + "\n" + describe();
      });
      ctx.check(greedy_ratio_beats_e(k), [&] { return "ratio below 1-1/e for k=" + std::to_string(k); });
      ctx.check(coverage_of(I, g.sets) == g.covered && coverage_of(I, e.sets) == e.covered,
                [&] { return "reported coverage is wrong\n" + describe(); });
      const auto se = serial::exact_max_coverage(I, ctx.opt.budget);
      ctx.check(se.covered == e.covered && se.sets == e.sets, [&] { return "parallel and serial exact disagree\n" + describe(); });
    });
  }
}

const std::vector<std::pair<std::string, void (*)(Ctx&)>>& registry() {
  static const std::vector<std::pair<std::string, void (*)(Ctx&)>> r = {
      {"monotone-dnf", suite_monotone_dnf},
      {"rb-transitivity", suite_rb_transitivity},
      {"majority-bound", suite_majority_bound},
      {"partition-identity", suite_partition_identity},
      {"pipeline-completeness", suite_pipeline_completeness},
      {"disperser-oracle", suite_disperser_oracle},
      {"wval-bridge", suite_wval_bridge},
      {"guha-khuller", suite_guha_khuller},
      {"abss", suite_abss},
      {"greedy-guarantee", suite_greedy_guarantee},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& options) {
  if (options.scale == 0) throw DomainError("run_suite: scale must be positive");
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    SuiteReport report;
    report.name = n;
    Ctx ctx{report, options, {}};
    fn(ctx);
    for (const auto& [key, value] : ctx.counters) report.notes.emplace_back(key, std::to_string(value));
    if (report.violations > 0) report.status = SuiteStatus::fail;
    else if (report.inconclusive > 0) report.status = SuiteStatus::inconclusive;
    else report.status = SuiteStatus::pass;
    return report;
  }
  throw DomainError("unknown suite '" + std::string(name) + "'");
}

}  // namespace gapforge
