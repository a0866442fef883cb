#include "equiflow/slope.hpp"

#include "equiflow/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace equiflow {
namespace {

// Number of digits a value of `bits` fractional bits determines: keep a_i
// while q_i^2 <= 2^(bits - margin).
std::vector<BigInt> reliable_digits(const Fixed& value) {
  const unsigned bits = value.frac_bits();
  const unsigned margin = 8;
  const BigInt limit = BigInt(1) << (bits > margin ? bits - margin : 0);

  std::vector<BigInt> digits;
  BigInt num = value.raw();
  BigInt den = BigInt(1) << bits;
  BigInt a0 = divide(num, den, Rounding::kFloor);
  digits.push_back(a0);
  BigInt rem = num - a0 * den;
  BigInt q_prev = 0, q = 1;
  while (!rem.is_zero()) {
    num = den;
    den = rem;
    BigInt a = num / den;
    rem = num - a * den;
    BigInt q_next = a * q + q_prev;
    if (q_next * q_next > limit) break;
    digits.push_back(std::move(a));
    q_prev = q;
    q = q_next;
  }
  return digits;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

BigInt parse_integer(std::string_view text) {
  const std::string t = trim(text);
  require(!t.empty(), "empty partial quotient");
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  require(i < t.size(), "malformed partial quotient '" + t + "'");
  for (std::size_t j = i; j < t.size(); ++j)
    require(std::isdigit(static_cast<unsigned char>(t[j])) != 0,
            "malformed partial quotient '" + t + "'");
  return BigInt(t);
}

}  // namespace

std::vector<Convergent> convergents_of(std::span<const BigInt> digits) {
  std::vector<Convergent> out;
  out.reserve(digits.size());
  BigInt p_prev = 1, q_prev = 0;  // p_{-1}, q_{-1}
  BigInt p_prev2 = 0, q_prev2 = 1;  // p_{-2}, q_{-2}
  for (const BigInt& a : digits) {
    BigInt p = a * p_prev + p_prev2;
    BigInt q = a * q_prev + q_prev2;
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    out.push_back({std::move(p), std::move(q)});
  }
  return out;
}

Slope::Slope(Fixed value, std::vector<BigInt> digits)
    : value_(std::move(value)), approx_(value_.to_double()), digits_(std::move(digits)) {
  convergents_ = convergents_of(digits_);
}

Slope Slope::from_value(Fixed value) {
  std::vector<BigInt> digits = reliable_digits(value);
  return Slope(std::move(value), std::move(digits));
}

Slope Slope::from_partial_quotients(std::vector<BigInt> digits, unsigned frac_bits) {
  require(!digits.empty(), "partial quotient list is empty");
  require(digits[0].sign() >= 0, "a0 must be non-negative");
  for (std::size_t i = 1; i < digits.size(); ++i)
    require(digits[i] >= 1, "partial quotients a_i (i >= 1) must be >= 1");

  const auto conv = convergents_of(digits);
  const Convergent& last = conv.back();
  if (last.q * last.q > (BigInt(1) << frac_bits))
    fail(ErrorKind::kOverflow, "convergent denominator q = " + last.q.str() +
                                   " exceeds the " + std::to_string(frac_bits) +
                                   "-bit fractional budget");
  // The value is increasing in the last complete quotient when the index of the
  // last digit is even, decreasing when odd. Rounding up (resp. down) keeps the
  // last complete quotient >= a_k, so its floor is a_k again.
  const std::size_t k = digits.size() - 1;
  const Rounding mode = (k % 2 == 0) ? Rounding::kCeil : Rounding::kFloor;
  Fixed value = Fixed::from_rational(last.p, last.q, frac_bits, mode);
  return Slope(std::move(value), std::move(digits));
}

Slope Slope::golden(unsigned frac_bits) { return from_value(golden_ratio(frac_bits)); }

Slope Slope::golden_conjugate(unsigned frac_bits) {
  return from_value(golden_ratio(frac_bits) - Fixed::from_integer(1, frac_bits));
}

Slope Slope::sqrt2(unsigned frac_bits) { return from_value(sqrt_of_integer(2, frac_bits)); }

Slope Slope::pi_minus_3(unsigned frac_bits) {
  return from_value(pi(frac_bits) - Fixed::from_integer(3, frac_bits));
}

Slope Slope::parse(std::string_view spec, unsigned frac_bits) {
  const std::string s = trim(spec);
  require(!s.empty(), "empty slope specification");
  if (s == "golden" || s == "phi") return golden(frac_bits);
  if (s == "invphi" || s == "golden-conjugate") return golden_conjugate(frac_bits);
  if (s == "sqrt2") return sqrt2(frac_bits);
  if (s == "pi-3") return pi_minus_3(frac_bits);
  if (s.front() == '[') {
    require(s.back() == ']', "digit list must end with ']'");
    std::string body = s.substr(1, s.size() - 2);
    std::vector<BigInt> digits;
    const auto semi = body.find(';');
    digits.push_back(parse_integer(body.substr(0, semi)));
    if (semi != std::string::npos) {
      std::string_view rest = std::string_view(body).substr(semi + 1);
      while (!trim(rest).empty()) {
        const auto comma = rest.find(',');
        digits.push_back(parse_integer(rest.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
      }
    }
    return from_partial_quotients(std::move(digits), frac_bits);
  }
  // Nonnegative integer ratios expand exactly; anything else is a literal value.
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = trim(std::string_view(s).substr(0, slash));
    const std::string den = trim(std::string_view(s).substr(slash + 1));
    auto digits_only = [](const std::string& t) {
      return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
    };
    if (digits_only(num) && digits_only(den)) {
      BigInt a(num), b(den);
      require(b != 0, "zero denominator in '" + s + "'");
      std::vector<BigInt> digits;
      while (b != 0) {
        digits.push_back(a / b);
        a %= b;
        std::swap(a, b);
      }
      return from_partial_quotients(std::move(digits), frac_bits);
    }
  }
  return from_value(Fixed::parse(s, frac_bits));
}

Direction Slope::direction() const {
  const double norm = std::hypot(1.0, approx_);
  return {1.0 / norm, approx_ / norm};
}

std::string Slope::digest() const {
  return value_.to_decimal(40) + "@" + std::to_string(value_.frac_bits());
}

std::vector<BigInt> continued_fraction(const Fixed& value, int depth) {
  require(depth >= 1, "continued fraction depth must be >= 1");
  const unsigned bits = value.frac_bits();
  std::vector<BigInt> digits;
  BigInt num = value.raw();
  BigInt den = BigInt(1) << bits;
  BigInt a0 = divide(num, den, Rounding::kFloor);
  BigInt rem = num - a0 * den;
  digits.push_back(std::move(a0));
  BigInt q_prev = 0, q = 1;
  while (!rem.is_zero() && static_cast<int>(digits.size()) <= depth) {
    num = den;
    den = rem;
    BigInt a = num / den;
    rem = num - a * den;
    BigInt q_next = a * q + q_prev;
    q_prev = q;
    q = q_next;
    digits.push_back(std::move(a));
  }
  if (q * q > (BigInt(1) << bits))
    fail(ErrorKind::kPrecisionExhausted,
         "q_" + std::to_string(digits.size() - 1) + "^2 exceeds 2^" + std::to_string(bits) +
             "; supply more fractional bits");
  return digits;
}

std::vector<BigInt> canonical_digits(std::vector<BigInt> digits) {
  if (digits.size() >= 2 && digits.back() == 1) {
    digits.pop_back();
    digits.back() += 1;
  }
  return digits;
}

bool is_badly_approximable(const Slope& slope, int depth, const BigInt& bound) {
  const auto digits = slope.partial_quotients();
  require(depth >= 1, "depth must be >= 1");
  require(static_cast<int>(digits.size()) > depth,
          "slope has only " + std::to_string(digits.size() - 1) + " partial quotients, " +
              std::to_string(depth) + " requested");
  for (int i = 1; i <= depth; ++i)
    if (digits[i] > bound) return false;
  return true;
}

std::vector<BigInt> ostrowski_digits(const BigInt& n, const Slope& slope) {
  require(n >= 1, "Ostrowski expansion needs N >= 1");
  const auto conv = slope.convergents();
  if (conv.empty() || conv.back().q <= n)
    fail(ErrorKind::kInsufficientConvergents,
         "largest stored denominator does not exceed N = " + n.str());
  std::size_t top = 0;
  while (top + 1 < conv.size() && conv[top + 1].q <= n) ++top;
  std::vector<BigInt> b(top + 1, BigInt(0));
  BigInt rest = n;
  for (std::size_t i = top + 1; i-- > 0 && !rest.is_zero();) {
    if (conv[i].q <= rest) {
      b[i] = rest / conv[i].q;
      rest -= b[i] * conv[i].q;
    }
  }
  return b;
}

}  // namespace equiflow
