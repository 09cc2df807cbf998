#pragma once

#include "gapforge/common.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gapforge {

/// Signed variable reference; `var` is 1-based as in DIMACS.
struct Literal {
  std::uint32_t var = 0;
  bool negated = false;

  int dimacs() const { return negated ? -static_cast<int>(var) : static_cast<int>(var); }
  friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::vector<Literal>;

/// Assignment to an explicit, sorted set of variables. A total assignment of
/// an n-variable formula has domain {1, ..., n}.
class Assignment {
 public:
  Assignment() = default;
  /// `domain` must be strictly increasing; `values` parallel to it (0/1).
  Assignment(std::vector<std::uint32_t> domain, std::vector<std::uint8_t> values);

  /// Total assignment: bits[i] is the value of variable i + 1.
  static Assignment total(std::vector<std::uint8_t> bits);

  const std::vector<std::uint32_t>& domain() const { return domain_; }
  const std::vector<std::uint8_t>& values() const { return values_; }
  std::size_t size() const { return domain_.size(); }

  bool covers(std::uint32_t var) const;
  /// Value of `var`; throws DomainError if `var` is outside the domain.
  bool value(std::uint32_t var) const;
  bool is_total(std::uint32_t num_vars) const;

  /// Restriction to the given sorted variable set (which must be covered).
  Assignment restrict_to(const std::vector<std::uint32_t>& vars) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<std::uint32_t> domain_;
  std::vector<std::uint8_t> values_;
};

/// A CNF formula whose clauses have width 1..3, with every variable in
/// [1, num_vars] occurring at least once and no variable repeated within a
/// clause.
class CnfFormula {
 public:
  CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses);

  std::uint32_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_.at(i); }

  bool satisfies(std::size_t clause_index, const Assignment& phi) const;

 private:
  std::uint32_t num_vars_;
  std::vector<Clause> clauses_;
};

enum class ParseErrorKind {
  malformed_header,
  bad_token,
  clause_too_wide,
  variable_out_of_range,
  duplicate_variable,
  unused_variable,
  clause_count_mismatch,
};

std::string_view to_string(ParseErrorKind kind);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail);
  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

struct ParseOptions {
  /// Drop variables that occur in no clause and renumber densely instead of
  /// rejecting the file.
  bool drop_unused_variables = false;
};

CnfFormula parse_dimacs(std::string_view text, const ParseOptions& options = {});
CnfFormula parse_dimacs(std::istream& in, const ParseOptions& options = {});

/// Canonical form: "p cnf n m" header, then one clause per line ending in 0.
std::string write_dimacs(const CnfFormula& formula);

/// Fraction of clauses satisfied by a total assignment.
Fraction clause_value(const CnfFormula& formula, const Assignment& phi);

/// Sorted union of the variables of the given clauses.
std::vector<std::uint32_t> vars_of(const CnfFormula& formula, const std::vector<std::uint32_t>& clause_subset);

/// Maximum number of clauses any single variable occurs in.
std::uint32_t max_occurrence(const CnfFormula& formula);

struct MaxValResult {
  Assignment witness;
  Fraction value;
  std::uint64_t satisfied = 0;
  std::uint64_t enumerated = 0;
};

/// Exhaustive maximum of clause_value over all 2^n assignments. Ties go to the
/// lexicographically smallest bit vector (x1 most significant).
MaxValResult brute_force_max_val(const CnfFormula& formula, std::uint64_t budget);

/// Clause masks for formulas with at most 64 variables: bit (var - 1).
struct ClauseMasks {
  std::vector<std::uint64_t> positive;
  std::vector<std::uint64_t> negative;
};
ClauseMasks clause_masks(const CnfFormula& formula);

/// Number of clauses satisfied by the total assignment encoded as a bit mask
/// (bit var-1 holds the value of var).
std::uint64_t satisfied_count(const ClauseMasks& masks, std::uint64_t bits);

/// Converts an enumeration index (x1 most significant) to a bit mask indexed
/// by var - 1, and back.
std::uint64_t index_to_bits(std::uint64_t index, std::uint32_t num_vars);
Assignment bits_to_assignment(std::uint64_t bits, std::uint32_t num_vars);

}  // namespace gapforge
