#pragma once

#include "gapforge/common.hpp"
#include "gapforge/downstream.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace gapforge {

struct CoverageResult {
  IndexSet sets;  ///< chosen set indices (greedy: in pick order)
  std::uint64_t covered = 0;
  std::uint64_t enumerated = 0;
};

/// Picks k sets, each covering the most uncovered elements (lowest index on
/// ties).
CoverageResult greedy_max_coverage(const CoverageInstance& I);

/// Best k sets by exhaustive enumeration; min-lex on ties.
CoverageResult exact_max_coverage(const CoverageInstance& I, std::uint64_t budget);

/// Smallest cover, trying sizes 0, 1, 2, ... with min-lex witnesses. nullopt
/// when the union of all sets misses some element.
std::optional<CoverageResult> exact_min_set_cover(const CoverageInstance& I, std::uint64_t budget);

/// Every element covered exactly once by the chosen sets.
bool verify_unique_cover(const CoverageInstance& I, const IndexSet& chosen);

/// Number of elements covered by the chosen sets.
std::uint64_t coverage_of(const CoverageInstance& I, const IndexSet& chosen);

/// 1 - (1 - 1/k)^k.
Fraction greedy_ratio(std::size_t k);

struct ClusteringResult {
  std::uint64_t cost = 0;
  IndexSet facilities;
  std::uint64_t enumerated = 0;
};

/// Sum over clients of the distance (median) or squared distance (mean) to
/// the nearest opened facility, minimized over facility k-subsets.
ClusteringResult exact_kmedian(const ClusteringInstance& I, std::uint64_t budget);
ClusteringResult exact_kmean(const ClusteringInstance& I, std::uint64_t budget);
std::uint64_t clustering_cost(const ClusteringInstance& I, const IndexSet& facilities, unsigned exponent);

struct NcpResult {
  std::uint64_t cost = 0;
  std::vector<std::uint8_t> x;
  std::uint64_t enumerated = 0;
};

/// Minimum of ‖Ax - y‖_0 over all x ∈ F_2^cols.
NcpResult exact_ncp(const CodeInstance& I, std::uint64_t budget);

struct CvpResult {
  BigInt cost;
  std::vector<std::int64_t> x;
  std::int64_t box = 0;
  std::uint64_t enumerated = 0;  ///< nodes visited
  std::uint64_t box_points = 0;  ///< (2 box + 1)^cols
};

/// Minimum of ‖Ax - y‖_p^p over x ∈ [-box, box]^cols. box defaults to k + 1:
/// when every column has its own identity row, any coordinate outside that
/// box already costs more than k.
CvpResult exact_cvp(const LatticeInstance& I, std::optional<std::int64_t> box, std::uint64_t budget);

}  // namespace gapforge
