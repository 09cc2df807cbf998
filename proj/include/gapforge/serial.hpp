#pragma once

// Single-threaded reference versions of the parallel enumeration kernels.
// They share no code with the kernels beyond the data types, and exist so
// tests and benchmarks can compare results and speed.

#include "gapforge/agreement.hpp"
#include "gapforge/formula.hpp"
#include "gapforge/labelcover.hpp"
#include "gapforge/setsys.hpp"
#include "gapforge/solvers.hpp"

#include <optional>

namespace gapforge::serial {

MaxValResult brute_force_max_val(const CnfFormula& formula, std::uint64_t budget);

/// Direct evaluation of every input, counted by Hamming weight.
std::vector<std::uint64_t> dnf_false_counts(const MonotoneDnf& f, std::uint64_t budget);

/// Exact mode only.
DisperserVerdict strong_disperser(const SetSystem& system, std::size_t r, std::size_t ell, const Fraction& eta,
                                  std::uint64_t budget);

Fraction t_wagr(const FunctionCollection& F, std::size_t t, std::uint64_t budget);

Fraction pair_consistency(const FunctionCollection& F, std::size_t i, std::size_t j, std::size_t ell,
                          ZeroLevel zero = ZeroLevel::convention);

LcOptimum brute_force_val(const LabelCoverInstance& L, std::uint64_t budget);
LcOptimum brute_force_wval(const LabelCoverInstance& L, std::uint64_t budget);

CoverageResult exact_max_coverage(const CoverageInstance& I, std::uint64_t budget);
ClusteringResult exact_clustering(const ClusteringInstance& I, unsigned exponent, std::uint64_t budget);
NcpResult exact_ncp(const CodeInstance& I, std::uint64_t budget);
/// Plain odometer over the whole box, no pruning.
CvpResult exact_cvp(const LatticeInstance& I, std::optional<std::int64_t> box, std::uint64_t budget);

}  // namespace gapforge::serial
