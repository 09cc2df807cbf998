#include "gapforge/formula.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <sstream>

#include <omp.h>

namespace gapforge {

Assignment::Assignment(std::vector<std::uint32_t> domain, std::vector<std::uint8_t> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (domain_.size() != values_.size()) throw DomainError("Assignment: domain and values differ in length");
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (domain_[i] == 0) throw DomainError("Assignment: variable 0 is not a variable");
    if (i > 0 && domain_[i - 1] >= domain_[i]) throw DomainError("Assignment: domain must be strictly increasing");
    if (values_[i] > 1) throw DomainError("Assignment: values must be 0 or 1");
  }
}

Assignment Assignment::total(std::vector<std::uint8_t> bits) {
  std::vector<std::uint32_t> domain(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) domain[i] = static_cast<std::uint32_t>(i + 1);
  return Assignment(std::move(domain), std::move(bits));
}

bool Assignment::covers(std::uint32_t var) const { return std::binary_search(domain_.begin(), domain_.end(), var); }

bool Assignment::value(std::uint32_t var) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), var);
  if (it == domain_.end() || *it != var)
    throw DomainError("Assignment: variable " + std::to_string(var) + " outside domain");
  return values_[static_cast<std::size_t>(it - domain_.begin())] != 0;
}

bool Assignment::is_total(std::uint32_t num_vars) const {
  if (domain_.size() != num_vars) return false;
  return num_vars == 0 || (domain_.front() == 1 && domain_.back() == num_vars);
}

Assignment Assignment::restrict_to(const std::vector<std::uint32_t>& vars) const {
  std::vector<std::uint8_t> values;
  values.reserve(vars.size());
  for (auto v : vars) values.push_back(value(v) ? 1 : 0);
  return Assignment(vars, std::move(values));
}

// ---------------------------------------------------------------------------

CnfFormula::CnfFormula(std::uint32_t num_vars, std::vector<Clause> clauses)
    : num_vars_(num_vars), clauses_(std::move(clauses)) {
  if (num_vars_ == 0) throw DomainError("CnfFormula: at least one variable required");
  std::vector<std::uint32_t> occurrences(num_vars_ + 1, 0);
  for (std::size_t c = 0; c < clauses_.size(); ++c) {
    const Clause& clause = clauses_[c];
    if (clause.empty() || clause.size() > 3)
      throw DomainError("CnfFormula: clause " + std::to_string(c) + " must have 1 to 3 literals");
    for (std::size_t i = 0; i < clause.size(); ++i) {
      if (clause[i].var == 0 || clause[i].var > num_vars_)
        throw DomainError("CnfFormula: clause " + std::to_string(c) + " references variable out of range");
      for (std::size_t j = 0; j < i; ++j)
        if (clause[j].var == clause[i].var)
          throw DomainError("CnfFormula: clause " + std::to_string(c) + " repeats variable " +
                            std::to_string(clause[i].var));
      ++occurrences[clause[i].var];
    }
  }
  for (std::uint32_t v = 1; v <= num_vars_; ++v)
    if (occurrences[v] == 0) throw DomainError("CnfFormula: variable " + std::to_string(v) + " occurs in no clause");
}

bool CnfFormula::satisfies(std::size_t clause_index, const Assignment& phi) const {
  for (const Literal& lit : clause(clause_index))
    if (phi.value(lit.var) != lit.negated) return true;
  return false;
}

// ---------------------------------------------------------------------------

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::malformed_header: return "malformed header";
    case ParseErrorKind::bad_token: return "bad token";
    case ParseErrorKind::clause_too_wide: return "clause has more than 3 literals";
    case ParseErrorKind::variable_out_of_range: return "variable index out of range";
    case ParseErrorKind::duplicate_variable: return "duplicated variable in clause";
    case ParseErrorKind::unused_variable: return "variable occurs in no clause";
    case ParseErrorKind::clause_count_mismatch: return "clause count does not match header";
  }
  return "unknown";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail)
    : std::runtime_error("line " + std::to_string(line) + ": " + std::string(to_string(kind)) +
                         (detail.empty() ? "" : " (" + detail + ")")),
      kind_(kind),
      line_(line) {}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_long(std::string_view tok, long& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

CnfFormula parse_dimacs(std::string_view text, const ParseOptions& options) {
  long declared_vars = -1;
  long declared_clauses = -1;
  std::size_t header_line = 0;
  std::vector<Clause> clauses;
  std::vector<std::size_t> clause_lines;
  Clause current;
  std::size_t current_line = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == 'c' || tokens.front() == "%") {
      if (end == text.size()) break;
      continue;
    }
    if (tokens.front() == "p") {
      long nv = 0, nc = 0;
      if (declared_vars >= 0 || tokens.size() != 4 || tokens[1] != "cnf" || !parse_long(tokens[2], nv) ||
          !parse_long(tokens[3], nc) || nv <= 0 || nc < 0)
        throw ParseError(ParseErrorKind::malformed_header, line_no, std::string(line));
      declared_vars = nv;
      declared_clauses = nc;
      header_line = line_no;
      if (end == text.size()) break;
      continue;
    }
    if (declared_vars < 0) throw ParseError(ParseErrorKind::malformed_header, line_no, "clause before 'p cnf' header");

    for (auto tok : tokens) {
      long lit = 0;
      if (!parse_long(tok, lit)) throw ParseError(ParseErrorKind::bad_token, line_no, std::string(tok));
      if (current.empty()) current_line = line_no;
      if (lit == 0) {
        if (current.empty()) throw ParseError(ParseErrorKind::bad_token, line_no, "empty clause");
        clauses.push_back(std::move(current));
        clause_lines.push_back(current_line);
        current.clear();
        continue;
      }
      const long var = lit < 0 ? -lit : lit;
      if (var > declared_vars)
        throw ParseError(ParseErrorKind::variable_out_of_range, line_no, std::to_string(lit));
      for (const Literal& l : current)
        if (l.var == static_cast<std::uint32_t>(var))
          throw ParseError(ParseErrorKind::duplicate_variable, line_no, std::to_string(lit));
      if (current.size() == 3) throw ParseError(ParseErrorKind::clause_too_wide, line_no, "");
      current.push_back(Literal{static_cast<std::uint32_t>(var), lit < 0});
    }
    if (end == text.size()) break;
  }
  if (declared_vars < 0) throw ParseError(ParseErrorKind::malformed_header, line_no, "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(ParseErrorKind::bad_token, line_no, "last clause not terminated by 0");
  if (static_cast<long>(clauses.size()) != declared_clauses)
    throw ParseError(ParseErrorKind::clause_count_mismatch, header_line,
                     "declared " + std::to_string(declared_clauses) + ", found " + std::to_string(clauses.size()));

  std::vector<std::size_t> first_use(static_cast<std::size_t>(declared_vars) + 1, 0);
  for (std::size_t c = 0; c < clauses.size(); ++c)
    for (const Literal& l : clauses[c])
      if (first_use[l.var] == 0) first_use[l.var] = clause_lines[c];

  std::uint32_t num_vars = static_cast<std::uint32_t>(declared_vars);
  if (options.drop_unused_variables) {
    std::vector<std::uint32_t> renumber(first_use.size(), 0);
    std::uint32_t next = 0;
    for (std::size_t v = 1; v < first_use.size(); ++v)
      if (first_use[v] != 0) renumber[v] = ++next;
    for (Clause& clause : clauses)
      for (Literal& l : clause) l.var = renumber[l.var];
    num_vars = next;
    if (num_vars == 0) throw ParseError(ParseErrorKind::unused_variable, header_line, "formula has no variables");
  } else {
    for (std::size_t v = 1; v < first_use.size(); ++v)
      if (first_use[v] == 0)
        throw ParseError(ParseErrorKind::unused_variable, header_line, "variable " + std::to_string(v));
  }
  return CnfFormula(num_vars, std::move(clauses));
}

CnfFormula parse_dimacs(std::istream& in, const ParseOptions& options) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_dimacs(text, options);
}

std::string write_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars() << ' ' << formula.num_clauses() << '\n';
  for (const Clause& clause : formula.clauses()) {
    for (const Literal& l : clause) out << l.dimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

Fraction clause_value(const CnfFormula& formula, const Assignment& phi) {
  if (!phi.is_total(formula.num_vars())) throw DomainError("clause_value: assignment is not total");
  std::uint64_t satisfied = 0;
  for (std::size_t c = 0; c < formula.num_clauses(); ++c)
    if (formula.satisfies(c, phi)) ++satisfied;
  return Fraction(satisfied, formula.num_clauses() == 0 ? 1 : formula.num_clauses());
}

std::vector<std::uint32_t> vars_of(const CnfFormula& formula, const std::vector<std::uint32_t>& clause_subset) {
  std::vector<std::uint32_t> vars;
  for (auto c : clause_subset) {
    if (c >= formula.num_clauses())
      throw DomainError("vars_of: clause index " + std::to_string(c) + " out of range");
    for (const Literal& l : formula.clause(c)) vars.push_back(l.var);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

std::uint32_t max_occurrence(const CnfFormula& formula) {
  std::vector<std::uint32_t> count(formula.num_vars() + 1, 0);
  for (const Clause& clause : formula.clauses())
    for (const Literal& l : clause) ++count[l.var];
  return *std::max_element(count.begin(), count.end());
}

// ---------------------------------------------------------------------------

ClauseMasks clause_masks(const CnfFormula& formula) {
  if (formula.num_vars() > 64) throw DomainError("clause_masks: more than 64 variables");
  ClauseMasks masks;
  masks.positive.reserve(formula.num_clauses());
  masks.negative.reserve(formula.num_clauses());
  for (const Clause& clause : formula.clauses()) {
    std::uint64_t pos = 0, neg = 0;
    for (const Literal& l : clause) (l.negated ? neg : pos) |= std::uint64_t{1} << (l.var - 1);
    masks.positive.push_back(pos);
    masks.negative.push_back(neg);
  }
  return masks;
}

std::uint64_t satisfied_count(const ClauseMasks& masks, std::uint64_t bits) {
  std::uint64_t count = 0;
  for (std::size_t c = 0; c < masks.positive.size(); ++c)
    count += ((bits & masks.positive[c]) | (~bits & masks.negative[c])) != 0;
  return count;
}

std::uint64_t index_to_bits(std::uint64_t index, std::uint32_t num_vars) {
  // Variable 1 is the most significant bit of the index.
  std::uint64_t bits = 0;
  for (std::uint32_t v = 0; v < num_vars; ++v)
    if ((index >> (num_vars - 1 - v)) & 1) bits |= std::uint64_t{1} << v;
  return bits;
}

Assignment bits_to_assignment(std::uint64_t bits, std::uint32_t num_vars) {
  std::vector<std::uint8_t> values(num_vars);
  for (std::uint32_t v = 0; v < num_vars; ++v) values[v] = static_cast<std::uint8_t>((bits >> v) & 1);
  return Assignment::total(std::move(values));
}

MaxValResult brute_force_max_val(const CnfFormula& formula, std::uint64_t budget) {
  const std::uint32_t n = formula.num_vars();
  const std::uint64_t total = n >= 64 ? kSaturated : (std::uint64_t{1} << n);
  require_budget("brute_force_max_val", total, budget);
  const ClauseMasks masks = clause_masks(formula);

  std::uint64_t best_count = 0;
  std::uint64_t best_index = 0;
  bool found = false;
#pragma omp parallel
  {
    std::uint64_t local_count = 0;
    std::uint64_t local_index = 0;
    bool local_found = false;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
      const auto index = static_cast<std::uint64_t>(i);
      const std::uint64_t count = satisfied_count(masks, index_to_bits(index, n));
      if (!local_found || count > local_count) {
        local_count = count;
        local_index = index;
        local_found = true;
      }
    }
#pragma omp critical(gapforge_max_val_merge)
    {
      if (local_found &&
          (!found || local_count > best_count || (local_count == best_count && local_index < best_index))) {
        best_count = local_count;
        best_index = local_index;
        found = true;
      }
    }
  }

  MaxValResult result;
  result.witness = bits_to_assignment(index_to_bits(best_index, n), n);
  result.satisfied = best_count;
  result.value = Fraction(best_count, formula.num_clauses() == 0 ? 1 : formula.num_clauses());
  result.enumerated = total;
  return result;
}

}  // namespace gapforge
