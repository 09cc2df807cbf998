#pragma once

#include "gapforge/common.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gapforge {

struct SuiteOptions {
  std::uint64_t seed = 0;
  /// Multiplies case counts and instance-size caps. 1 is the desk-scale
  /// default.
  std::size_t scale = 1;
  std::uint64_t budget = kDefaultBudget;
};

enum class SuiteStatus { pass, fail, inconclusive };
std::string_view to_string(SuiteStatus status);

struct SuiteReport {
  std::string name;
  SuiteStatus status = SuiteStatus::pass;
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  /// Cases abandoned because an enumeration exceeded the budget.
  std::uint64_t inconclusive = 0;
  /// Serialized first violating case (cases run smallest first).
  std::string repro;
  std::vector<std::pair<std::string, std::string>> notes;
};

const std::vector<std::string>& suite_names();

/// Runs a named property suite. Throws DomainError for an unknown name.
SuiteReport run_suite(std::string_view name, const SuiteOptions& options);

/// Exact test of prob <= ell * (1 - p)^(eps k / ell).
bool dnf_lemma_bound_holds(const Fraction& prob, std::size_t ell, const Fraction& p, const Fraction& eps,
                           std::size_t k);

/// Exact test of 1 - (1 - 1/k)^k >= 1 - 1/e, using a rational upper bound on e.
bool greedy_ratio_beats_e(std::size_t k);

}  // namespace gapforge
