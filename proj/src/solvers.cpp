#include "gapforge/solvers.hpp"
#include "gapforge/bitset.hpp"

#include <algorithm>
#include <bit>

namespace gapforge {

namespace {

std::vector<Bitset> set_bits(const CoverageInstance& I) {
  std::vector<Bitset> out;
  out.reserve(I.num_sets());
  for (const auto& s : I.sets()) {
    Bitset b(I.universe());
    for (auto u : s) b.set(u);
    out.push_back(std::move(b));
  }
  return out;
}

void check_index_set(const IndexSet& chosen, std::size_t limit, std::string_view what) {
  for (auto s : chosen)
    if (s >= limit) throw DomainError(std::string(what) + ": index out of range");
}

}  // namespace

std::uint64_t coverage_of(const CoverageInstance& I, const IndexSet& chosen) {
  check_index_set(chosen, I.num_sets(), "coverage_of");
  Bitset covered(I.universe());
  for (auto s : chosen)
    for (auto u : I.set(s)) covered.set(u);
  return covered.count();
}

bool verify_unique_cover(const CoverageInstance& I, const IndexSet& chosen) {
  check_index_set(chosen, I.num_sets(), "verify_unique_cover");
  std::vector<std::uint32_t> mult(I.universe(), 0);
  for (auto s : chosen)
    for (auto u : I.set(s)) ++mult[u];
  return std::all_of(mult.begin(), mult.end(), [](std::uint32_t m) { return m == 1; });
}

Fraction greedy_ratio(std::size_t k) {
  if (k < 1) throw DomainError("greedy_ratio: k must be positive");
  Fraction miss = 1;
  const Fraction step = Fraction(k - 1, k);
  for (std::size_t i = 0; i < k; ++i) miss *= step;
  return 1 - miss;
}

CoverageResult greedy_max_coverage(const CoverageInstance& I) {
  if (I.k() > I.num_sets()) throw DomainError("greedy_max_coverage: k exceeds the number of sets");
  const auto bits = set_bits(I);
  Bitset covered(I.universe());
  std::vector<bool> used(I.num_sets(), false);
  CoverageResult out;
  for (std::size_t step = 0; step < I.k(); ++step) {
    std::size_t best = I.num_sets();
    std::size_t best_gain = 0;
    for (std::size_t s = 0; s < I.num_sets(); ++s) {
      if (used[s]) continue;
      const std::size_t gain = bits[s].count() - bits[s].and_count(covered);
      if (best == I.num_sets() || gain > best_gain) {
        best = s;
        best_gain = gain;
      }
    }
    used[best] = true;
    covered |= bits[best];
    out.sets.push_back(static_cast<std::uint32_t>(best));
    ++out.enumerated;
  }
  out.covered = covered.count();
  return out;
}

CoverageResult exact_max_coverage(const CoverageInstance& I, std::uint64_t budget) {
  if (I.k() > I.num_sets()) throw DomainError("exact_max_coverage: k exceeds the number of sets");
  const std::uint64_t total = binomial(I.num_sets(), I.k());
  require_budget("exact_max_coverage", total, budget);
  const auto bits = set_bits(I);
  const auto n = static_cast<std::uint32_t>(I.num_sets());
  const auto k = static_cast<std::uint32_t>(I.k());
  const std::uint64_t chunk = std::max<std::uint64_t>(1, total / 256);
  const auto chunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);
  std::uint64_t best_cov = 0, best_rank = kSaturated;
#pragma omp parallel
  {
    std::uint64_t local_cov = 0, local_rank = kSaturated;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      auto comb = unrank_combination(begin, n, k);
      for (std::uint64_t r = begin; r < end; ++r) {
        Bitset u = bits[comb[0]];
        for (std::size_t x = 1; x < comb.size(); ++x) u |= bits[comb[x]];
        const std::uint64_t cov = u.count();
        if (local_rank == kSaturated || cov > local_cov) {
          local_cov = cov;
          local_rank = r;
        }
        next_combination(comb, n);
      }
    }
#pragma omp critical(gapforge_maxcov_merge)
    if (local_rank != kSaturated &&
        (best_rank == kSaturated || local_cov > best_cov || (local_cov == best_cov && local_rank < best_rank))) {
      best_cov = local_cov;
      best_rank = local_rank;
    }
  }
  CoverageResult out;
  out.sets = unrank_combination(best_rank, n, k);
  out.covered = best_cov;
  out.enumerated = total;
  return out;
}

std::optional<CoverageResult> exact_min_set_cover(const CoverageInstance& I, std::uint64_t budget) {
  if (!I.uncovered_elements().empty()) return std::nullopt;
  const auto bits = set_bits(I);
  const auto n = static_cast<std::uint32_t>(I.num_sets());
  std::uint64_t spent = 0;
  for (std::uint32_t size = 0; size <= n; ++size) {
    const std::uint64_t level = binomial(n, size);
    require_budget("exact_min_set_cover", sat_add(spent, level), budget);
    if (size == 0) {
      ++spent;
      if (I.universe() == 0) return CoverageResult{{}, 0, spent};
      continue;
    }
    std::uint64_t found = kSaturated;
    const std::uint64_t chunk = std::max<std::uint64_t>(1, level / 256);
    const auto chunks = static_cast<std::int64_t>((level + chunk - 1) / chunk);
#pragma omp parallel for schedule(dynamic, 1) reduction(min : found)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk;
      const std::uint64_t end = std::min(level, begin + chunk);
      auto comb = unrank_combination(begin, n, size);
      for (std::uint64_t r = begin; r < end && r < found; ++r) {
        Bitset u = bits[comb[0]];
        for (std::size_t x = 1; x < comb.size(); ++x) u |= bits[comb[x]];
        if (u.count() == I.universe()) {
          found = r;
          break;
        }
        next_combination(comb, n);
      }
    }
    if (found != kSaturated) {
      CoverageResult out;
      out.sets = unrank_combination(found, n, size);
      out.covered = I.universe();
      out.enumerated = spent + found + 1;
      return out;
    }
    spent += level;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::uint64_t clustering_cost(const ClusteringInstance& I, const IndexSet& facilities, unsigned exponent) {
  if (facilities.empty()) throw DomainError("clustering_cost: no facilities opened");
  check_index_set(facilities, I.facilities(), "clustering_cost");
  std::uint64_t cost = 0;
  for (std::size_t c = 0; c < I.clients(); ++c) {
    std::uint64_t best = kSaturated;
    for (auto f : facilities) best = std::min<std::uint64_t>(best, I.client_to_facility(c, f));
    cost += exponent == 2 ? best * best : best;
  }
  return cost;
}

namespace {

ClusteringResult exact_clustering(const ClusteringInstance& I, std::uint64_t budget, unsigned exponent,
                                  std::string_view what) {
  if (I.k() > I.facilities()) throw DomainError(std::string(what) + ": k exceeds the number of facilities");
  const auto n = static_cast<std::uint32_t>(I.facilities());
  const auto k = static_cast<std::uint32_t>(I.k());
  const std::uint64_t total = binomial(n, k);
  require_budget(what, total, budget);
  const std::uint64_t chunk = std::max<std::uint64_t>(1, total / 256);
  const auto chunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);
  std::uint64_t best_cost = kSaturated, best_rank = kSaturated;
#pragma omp parallel
  {
    std::uint64_t local_cost = kSaturated, local_rank = kSaturated;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      auto comb = unrank_combination(begin, n, k);
      for (std::uint64_t r = begin; r < end; ++r) {
        const std::uint64_t cost = clustering_cost(I, comb, exponent);
        if (cost < local_cost) {
          local_cost = cost;
          local_rank = r;
        }
        next_combination(comb, n);
      }
    }
#pragma omp critical(gapforge_cluster_merge)
    if (local_cost < best_cost || (local_cost == best_cost && local_rank < best_rank)) {
      best_cost = local_cost;
      best_rank = local_rank;
    }
  }
  ClusteringResult out;
  out.cost = best_cost;
  out.facilities = unrank_combination(best_rank, n, k);
  out.enumerated = total;
  return out;
}

}  // namespace

ClusteringResult exact_kmedian(const ClusteringInstance& I, std::uint64_t budget) {
  return exact_clustering(I, budget, 1, "exact_kmedian");
}

ClusteringResult exact_kmean(const ClusteringInstance& I, std::uint64_t budget) {
  return exact_clustering(I, budget, 2, "exact_kmean");
}

// ---------------------------------------------------------------------------

NcpResult exact_ncp(const CodeInstance& I, std::uint64_t budget) {
  if (I.cols > 62) throw BudgetExceeded("exact_ncp", kSaturated, budget);
  if (I.A.size() != I.rows || I.y.size() != I.rows) throw DomainError("exact_ncp: inconsistent dimensions");
  const std::uint64_t total = std::uint64_t{1} << I.cols;
  require_budget("exact_ncp", total, budget);
  // Bit b of an enumeration key is column cols-1-b, so keys order x
  // lexicographically with x_0 most significant.
  std::vector<Bitset> column(I.cols, Bitset(I.rows));
  Bitset y(I.rows);
  for (std::size_t r = 0; r < I.rows; ++r) {
    if (I.A[r].size() != I.cols) throw DomainError("exact_ncp: inconsistent dimensions");
    if (I.y[r]) y.set(r);
    for (std::size_t c = 0; c < I.cols; ++c)
      if (I.A[r][c]) column[I.cols - 1 - c].set(r);
  }
  const std::uint64_t chunk = std::max<std::uint64_t>(1, total / 256);
  const auto chunks = static_cast<std::int64_t>((total + chunk - 1) / chunk);
  std::uint64_t best_cost = kSaturated, best_key = kSaturated;
#pragma omp parallel
  {
    std::uint64_t local_cost = kSaturated, local_key = kSaturated;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      std::uint64_t key = begin ^ (begin >> 1);
      Bitset residual = y;
      for (std::uint64_t bits = key; bits; bits &= bits - 1) residual ^= column[std::countr_zero(bits)];
      for (std::uint64_t i = begin;;) {
        const std::uint64_t cost = residual.count();
        if (cost < local_cost || (cost == local_cost && key < local_key)) {
          local_cost = cost;
          local_key = key;
        }
        if (++i == end) break;
        const int flip = std::countr_zero(i);
        key ^= std::uint64_t{1} << flip;
        residual ^= column[static_cast<std::size_t>(flip)];
      }
    }
#pragma omp critical(gapforge_ncp_merge)
    if (local_cost < best_cost || (local_cost == best_cost && local_key < best_key)) {
      best_cost = local_cost;
      best_key = local_key;
    }
  }
  NcpResult out;
  out.cost = best_cost;
  out.x.assign(I.cols, 0);
  for (std::size_t c = 0; c < I.cols; ++c) out.x[c] = (best_key >> (I.cols - 1 - c)) & 1;
  out.enumerated = total;
  return out;
}

namespace {

struct CvpSearch {
  const LatticeInstance& I;
  std::int64_t box;
  std::vector<std::vector<std::size_t>> rows_closing_at;  ///< rows whose last nonzero column is c
  std::uint64_t constant_cost = 0;                         ///< rows with no nonzero entry

  std::vector<std::int64_t> partial;  ///< running (Ax - y) per row
  std::vector<std::int64_t> x;
  std::uint64_t best = kSaturated;
  std::vector<std::int64_t> best_x;
  std::uint64_t nodes = 0;

  std::uint64_t row_cost(std::int64_t v) const {
    return sat_pow(static_cast<std::uint64_t>(v < 0 ? -v : v), I.p);
  }

  void dfs(std::size_t c, std::uint64_t cost) {
    ++nodes;
    if (c == I.cols) {
      if (cost < best) {
        best = cost;
        best_x = x;
      }
      return;
    }
    for (std::int64_t v = -box; v <= box; ++v) {
      x[c] = v;
      for (std::size_t r = 0; r < I.rows; ++r) partial[r] += I.A[r][c] * v;
      std::uint64_t next = cost;
      for (auto r : rows_closing_at[c]) next = sat_add(next, row_cost(partial[r]));
      if (next < best) dfs(c + 1, next);
      for (std::size_t r = 0; r < I.rows; ++r) partial[r] -= I.A[r][c] * v;
    }
    x[c] = 0;
  }
};

}  // namespace

CvpResult exact_cvp(const LatticeInstance& I, std::optional<std::int64_t> box, std::uint64_t budget) {
  if (I.A.size() != I.rows || I.y.size() != I.rows) throw DomainError("exact_cvp: inconsistent dimensions");
  if (I.cols == 0) throw DomainError("exact_cvp: no columns");
  const std::int64_t B = box ? *box : static_cast<std::int64_t>(I.k) + 1;
  if (B < 0) throw DomainError("exact_cvp: box must be nonnegative");
  const std::uint64_t points = sat_pow(static_cast<std::uint64_t>(2 * B + 1), I.cols);
  require_budget("exact_cvp", points, budget);

  std::vector<std::vector<std::size_t>> closing(I.cols);
  std::uint64_t constant = 0;
  for (std::size_t r = 0; r < I.rows; ++r) {
    if (I.A[r].size() != I.cols) throw DomainError("exact_cvp: inconsistent dimensions");
    std::size_t last = I.cols;
    for (std::size_t c = 0; c < I.cols; ++c)
      if (I.A[r][c] != 0) last = c;
    if (last == I.cols) {
      const std::int64_t v = -I.y[r];
      constant = sat_add(constant, sat_pow(static_cast<std::uint64_t>(v < 0 ? -v : v), I.p));
    } else {
      closing[last].push_back(r);
    }
  }

  // One independent search per value of x_0; merged by (cost, x_0).
  const auto branches = static_cast<std::int64_t>(2 * B + 1);
  std::vector<std::uint64_t> branch_best(static_cast<std::size_t>(branches), kSaturated);
  std::vector<std::vector<std::int64_t>> branch_x(static_cast<std::size_t>(branches));
  std::vector<std::uint64_t> branch_nodes(static_cast<std::size_t>(branches), 0);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t b = 0; b < branches; ++b) {
    CvpSearch s{I, B, closing, constant, std::vector<std::int64_t>(I.rows), std::vector<std::int64_t>(I.cols, 0),
                kSaturated, {}, 0};
    for (std::size_t r = 0; r < I.rows; ++r) s.partial[r] = -I.y[r];
    const std::int64_t v = b - B;
    s.x[0] = v;
    for (std::size_t r = 0; r < I.rows; ++r) s.partial[r] += I.A[r][0] * v;
    std::uint64_t cost = constant;
    for (auto r : closing[0]) cost = sat_add(cost, s.row_cost(s.partial[r]));
    ++s.nodes;
    s.dfs(1, cost);
    const auto bi = static_cast<std::size_t>(b);
    branch_best[bi] = s.best;
    branch_x[bi] = std::move(s.best_x);
    branch_nodes[bi] = s.nodes;
  }
  CvpResult out;
  out.box = B;
  out.box_points = points;
  std::size_t winner = 0;
  for (std::size_t b = 0; b < branch_best.size(); ++b) {
    out.enumerated += branch_nodes[b];
    if (branch_best[b] < branch_best[winner]) winner = b;
  }
  out.x = branch_x[winner];
  out.cost = cvp_cost(I, out.x);
  return out;
}

}  // namespace gapforge
