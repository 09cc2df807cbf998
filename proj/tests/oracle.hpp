#pragma once

// Naive test-side oracles. Written against the textbook definitions with
// std containers, sharing nothing with the library kernels.

#include "gapforge/agreement.hpp"
#include "gapforge/downstream.hpp"
#include "gapforge/setsys.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using gapforge::Fraction;

inline std::set<std::uint32_t> as_set(const std::vector<std::uint32_t>& v) { return {v.begin(), v.end()}; }

inline std::set<std::uint32_t> meet(const std::set<std::uint32_t>& a, const std::set<std::uint32_t>& b) {
  std::set<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

/// f_i(u) read straight off the serialized value list.
inline int value_at(const gapforge::FunctionCollection& F, std::size_t i, std::uint32_t u) {
  const auto f = F.function(i);
  const auto it = std::lower_bound(f.domain.begin(), f.domain.end(), u);
  if (it == f.domain.end() || *it != u) return -1;
  return f.values[static_cast<std::size_t>(it - f.domain.begin())];
}

inline bool agree_on(const gapforge::FunctionCollection& F, std::size_t i, std::size_t j,
                     const std::set<std::uint32_t>& where) {
  for (auto u : where)
    if (value_at(F, i, u) != value_at(F, j, u)) return false;
  return true;
}

/// Every subset of [0, n) of size exactly r, as sorted vectors.
inline std::vector<std::vector<std::uint32_t>> subsets_of_size(std::uint32_t n, std::uint32_t r) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::uint32_t>(__builtin_popcountll(mask)) != r) continue;
    std::vector<std::uint32_t> s;
    for (std::uint32_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

inline Fraction t_wagr(const gapforge::FunctionCollection& F, std::size_t t) {
  const auto tuples = subsets_of_size(static_cast<std::uint32_t>(F.k()), static_cast<std::uint32_t>(t));
  std::size_t good = 0;
  for (const auto& tup : tuples) {
    auto common = as_set(F.system().set(tup[0]));
    for (auto i : tup) common = meet(common, as_set(F.system().set(i)));
    bool any = false;
    for (std::size_t a = 0; a < tup.size() && !any; ++a)
      for (std::size_t b = a + 1; b < tup.size() && !any; ++b) any = agree_on(F, tup[a], tup[b], common);
    good += any;
  }
  return Fraction(good, tuples.size());
}

/// ℓ = 0 is taken literally: agreement on S_i ∩ S_j.
inline Fraction pair_consistency_literal(const gapforge::FunctionCollection& F, std::size_t i, std::size_t j,
                                         std::size_t ell) {
  std::vector<std::uint32_t> others;
  for (std::uint32_t x = 0; x < F.k(); ++x)
    if (x != i && x != j) others.push_back(x);
  const auto base = meet(as_set(F.system().set(i)), as_set(F.system().set(j)));
  const auto picks = subsets_of_size(static_cast<std::uint32_t>(others.size()), static_cast<std::uint32_t>(ell));
  std::size_t good = 0;
  for (const auto& pick : picks) {
    auto where = base;
    for (auto x : pick) where = meet(where, as_set(F.system().set(others[x])));
    good += agree_on(F, i, j, where);
  }
  return Fraction(good, picks.size());
}

/// Pr[f = 0] by summing the weight of every falsifying input.
inline Fraction dnf_false_prob(const gapforge::MonotoneDnf& f, const Fraction& p) {
  const std::size_t k = f.num_vars();
  Fraction total = 0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
    bool value = false;
    for (const auto& term : f.terms()) {
      bool all = true;
      for (auto v : term) all = all && (x >> v & 1);
      value = value || all;
    }
    if (value) continue;
    Fraction w = 1;
    for (std::size_t v = 0; v < k; ++v) w *= (x >> v & 1) ? p : 1 - p;
    total += w;
  }
  return total;
}

/// Best coverage by k sets, by trying every bitmask of sets.
inline std::uint64_t max_coverage(const gapforge::CoverageInstance& I) {
  std::uint64_t best = 0;
  const auto S = I.num_sets();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << S); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != std::min(I.k(), S)) continue;
    std::set<std::uint32_t> covered;
    for (std::size_t s = 0; s < S; ++s)
      if (mask >> s & 1) covered.insert(I.set(s).begin(), I.set(s).end());
    best = std::max<std::uint64_t>(best, covered.size());
  }
  return best;
}

inline std::size_t min_set_cover(const gapforge::CoverageInstance& I) {
  std::size_t best = I.num_sets() + 1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << I.num_sets()); ++mask) {
    std::set<std::uint32_t> covered;
    for (std::size_t s = 0; s < I.num_sets(); ++s)
      if (mask >> s & 1) covered.insert(I.set(s).begin(), I.set(s).end());
    if (covered.size() == I.universe()) best = std::min<std::size_t>(best, __builtin_popcountll(mask));
  }
  return best;
}

}  // namespace oracle
