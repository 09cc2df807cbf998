#include "gapforge/common.hpp"
#include "gapforge/rng.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace gapforge {

BudgetExceeded::BudgetExceeded(std::string_view what, std::uint64_t required, std::uint64_t budget)
    : std::runtime_error(std::string(what) + ": enumeration requires " +
                         (required == kSaturated ? std::string(">= 2^64") : std::to_string(required)) +
                         " steps, budget is " + std::to_string(budget)),
      required_(required),
      budget_(budget) {}

std::uint64_t default_budget() {
  if (const char* env = std::getenv("GAPFORGE_BUDGET"); env != nullptr && *env != '\0') {
    std::uint64_t value = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, value);
    if (ec == std::errc() && ptr == end && value > 0) return value;
  }
  return kDefaultBudget;
}

void require_budget(std::string_view what, std::uint64_t required, std::uint64_t budget) {
  if (required > budget) throw BudgetExceeded(what, required, budget);
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) noexcept {
  if (a == 0 || b == 0) return 0;
  if (a > kSaturated / b) return kSaturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) noexcept {
  return (a > kSaturated - b) ? kSaturated : a + b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) noexcept {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r = sat_mul(r, base);
    if (r == kSaturated) break;
  }
  return r;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(r);
}

std::vector<std::vector<std::uint32_t>> combinations(std::uint32_t n, std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  if (k > n) return out;
  std::vector<std::uint32_t> c(k);
  for (std::uint32_t i = 0; i < k; ++i) c[i] = i;
  do {
    out.push_back(c);
  } while (next_combination(c, n));
  return out;
}

bool next_combination(std::vector<std::uint32_t>& comb, std::uint32_t n) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] < n - (k - i)) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::vector<std::uint32_t> unrank_combination(std::uint64_t rank, std::uint32_t n, std::uint32_t k) {
  std::vector<std::uint32_t> c;
  c.reserve(k);
  std::uint32_t next = 0;
  for (std::uint32_t slot = 0; slot < k; ++slot) {
    for (std::uint32_t v = next; v < n; ++v) {
      std::uint64_t below = binomial(n - v - 1, k - slot - 1);
      if (rank < below) {
        c.push_back(v);
        next = v + 1;
        break;
      }
      rank -= below;
    }
  }
  return c;
}

Fraction parse_fraction(std::string_view text) {
  auto fail = [&]() -> Fraction { throw DomainError("not a fraction: '" + std::string(text) + "'"); };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) return fail();
  auto parse_int = [&](std::string_view s) -> BigInt {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) fail();
    BigInt v = 0;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail();
      v = v * 10 + (c - '0');
    }
    return neg ? BigInt(-v) : v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(trim(text.substr(0, slash)));
    BigInt den = parse_int(trim(text.substr(slash + 1)));
    if (den == 0) fail();
    return Fraction(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole.front() == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole = "0";
    BigInt w = parse_int(whole);
    if (w < 0) w = -w;
    BigInt f = frac.empty() ? BigInt(0) : parse_int(frac);
    if (f < 0) fail();
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Fraction r = Fraction(w) + Fraction(f, scale);
    return neg ? Fraction(-r) : r;
  }
  return Fraction(parse_int(text));
}

std::string to_string(const Fraction& f) {
  const auto num = boost::multiprecision::numerator(f);
  const auto den = boost::multiprecision::denominator(f);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Fraction& f) { return f.convert_to<double>(); }

BigInt ceil(const Fraction& f) {
  const BigInt num = boost::multiprecision::numerator(f);
  const BigInt den = boost::multiprecision::denominator(f);
  BigInt q = num / den;
  if (q * den < num) ++q;
  return q;
}

Fraction power(Fraction base, std::uint64_t exp) {
  Fraction out = 1;
  while (exp) {
    if (exp & 1) out *= base;
    exp >>= 1;
    if (exp) base *= base;
  }
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below: empty range");
  const std::uint64_t limit = kSaturated - (kSaturated % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return x % bound;
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw DomainError("Rng::between: empty range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Rng::bernoulli(std::uint64_t num, std::uint64_t den) {
  if (den == 0 || num > den) throw DomainError("Rng::bernoulli: probability outside [0,1]");
  if (num == 0) return false;
  if (num == den) return true;
  return below(den) < num;
}

bool Rng::bernoulli(const Fraction& p) {
  const BigInt num = boost::multiprecision::numerator(p);
  const BigInt den = boost::multiprecision::denominator(p);
  if (num < 0 || num > den) throw DomainError("Rng::bernoulli: probability outside [0,1]");
  if (den > BigInt(kSaturated)) throw DomainError("Rng::bernoulli: denominator exceeds 64 bits");
  return bernoulli(num.convert_to<std::uint64_t>(), den.convert_to<std::uint64_t>());
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::vector<std::uint32_t> Rng::subset(std::uint32_t n, std::uint32_t k) {
  if (k > n) throw DomainError("Rng::subset: k > n");
  // Floyd's algorithm.
  std::vector<std::uint32_t> chosen;
  chosen.reserve(k);
  for (std::uint32_t j = n - k; j < n; ++j) {
    auto t = static_cast<std::uint32_t>(below(static_cast<std::uint64_t>(j) + 1));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
      chosen.push_back(t);
    else
      chosen.push_back(j);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace gapforge
