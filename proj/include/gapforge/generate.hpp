#pragma once

// Seeded toy-instance generators shared by the property suites, the CLI and
// the benchmarks. Every generator is a pure function of its arguments.

#include "gapforge/agreement.hpp"
#include "gapforge/downstream.hpp"
#include "gapforge/formula.hpp"
#include "gapforge/labelcover.hpp"
#include "gapforge/setsys.hpp"

#include <cstdint>
#include <vector>

namespace gapforge::gen {

struct PlantedFormula {
  CnfFormula formula;
  Assignment planted;  ///< satisfies every clause
};

/// CNF over n variables with m clauses of width <= 3, every variable used at
/// least once and at most Δ times, satisfied by a random planted assignment.
/// Requires n <= m * 3 and m <= n * Δ.
PlantedFormula planted_cnf(std::uint32_t n, std::size_t m, std::uint32_t Delta, std::uint64_t seed);

/// Uniformly random width-3 clauses (subject to the occurrence bound); may be
/// unsatisfiable.
CnfFormula random_cnf(std::uint32_t n, std::size_t m, std::uint32_t Delta, std::uint64_t seed);

enum class Design {
  cyclic,    ///< right vertex i sees left vertices i, i+1, ..., i+t-1 (mod k)
  complete,  ///< one right vertex per t-subset of the left vertices
};

/// Bi-regular, right-degree-t instance with explicit random tables. With
/// `planted`, every table agrees with a hidden labeling so the instance is
/// satisfiable.
LabelCoverInstance random_label_cover(std::size_t left, std::size_t t, Design design, std::uint64_t left_alphabet,
                                      std::uint64_t right_alphabet, bool planted, std::uint64_t seed);

/// Random sets, each element included with probability `density`.
CoverageInstance random_coverage(std::size_t universe, std::size_t sets, std::size_t k, const Fraction& density,
                                 std::uint64_t seed);

/// A random partition of the universe into k nonempty blocks followed by
/// `decoys` random sets, shuffled. The blocks form a unique cover.
struct PlantedCover {
  CoverageInstance instance;
  IndexSet cover;  ///< set indices of the blocks, sorted
};
PlantedCover planted_unique_cover(std::size_t universe, std::size_t k, std::size_t decoys, std::uint64_t seed);

/// Random DNF with `size` distinct terms of width <= ell on k variables. When
/// `hub` > 0 every term meets a fixed random set of `hub` variables. Throws
/// DomainError when fewer than `size` candidate terms exist.
MonotoneDnf random_dnf(std::size_t k, std::size_t ell, std::size_t size, std::size_t hub, std::uint64_t seed);

/// Sets sampled with probability p; each f_S is the restriction of a random
/// global function, except that with probability `corrupt` a function is
/// replaced by noise where each bit flips with probability `flip`.
FunctionCollection noisy_collection(std::size_t n, std::size_t k, const Fraction& p, const Fraction& corrupt,
                                    const Fraction& flip, std::uint64_t seed);

}  // namespace gapforge::gen
