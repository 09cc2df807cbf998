#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gapforge {

/// Exact rational used for every value that enters a contract.
using Fraction = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
/// 100-decimal-digit binary float; exponent range covers the astronomically
/// large soundness constants.
using BigReal = boost::multiprecision::cpp_bin_float_100;

/// Violation of an operation's precondition or a type invariant.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive enumeration would exceed the caller's budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string_view what, std::uint64_t required, std::uint64_t budget);

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
inline constexpr std::uint64_t kDefaultBudget = 100'000'000ULL;

/// Default enumeration budget; GAPFORGE_BUDGET overrides it when set.
std::uint64_t default_budget();

void require_budget(std::string_view what, std::uint64_t required, std::uint64_t budget);

// Saturating arithmetic for enumeration counts.
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) noexcept;
std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) noexcept;
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// All k-subsets of [0, n) in lexicographic order.
std::vector<std::vector<std::uint32_t>> combinations(std::uint32_t n, std::uint32_t k);

/// Advances `comb` (a sorted k-subset of [0, n)) to its lexicographic
/// successor. Returns false once the last combination has been passed.
bool next_combination(std::vector<std::uint32_t>& comb, std::uint32_t n);

/// The combination of lexicographic rank `rank` among k-subsets of [0, n).
std::vector<std::uint32_t> unrank_combination(std::uint64_t rank, std::uint32_t n, std::uint32_t k);

/// Parses "3/8", "0.375", or "2" into an exact fraction.
Fraction parse_fraction(std::string_view text);
std::string to_string(const Fraction& f);
double to_double(const Fraction& f);

/// base^exp by repeated squaring.
Fraction power(Fraction base, std::uint64_t exp);

/// Smallest integer >= f.
BigInt ceil(const Fraction& f);

bool is_prime(std::uint64_t n);

}  // namespace gapforge
