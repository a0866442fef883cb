#include "equiflow/fixed.hpp"

#include "equiflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace equiflow {
namespace {

BigInt pow2(unsigned k) { return BigInt(1) << k; }

BigInt pow10(unsigned k) {
  BigInt r = 1;
  for (unsigned i = 0; i < k; ++i) r *= 10;
  return r;
}

// raw * 2^-shift with the requested rounding.
BigInt shift_down(const BigInt& raw, unsigned shift, Rounding mode) {
  if (shift == 0) return raw;
  if (raw.sign() >= 0 && mode == Rounding::kFloor) return raw >> shift;
  return divide(raw, pow2(shift), mode);
}

}  // namespace

BigInt divide(const BigInt& num, const BigInt& den, Rounding mode) {
  BigInt q = num / den;  // truncates toward zero
  BigInt r = num - q * den;
  if (r.sign() < 0) {
    q -= 1;
    r += den;
  }
  // Now q = floor(num / den) and 0 <= r < den.
  switch (mode) {
    case Rounding::kFloor: break;
    case Rounding::kCeil:
      if (!r.is_zero()) q += 1;
      break;
    case Rounding::kNearest:
      if (2 * r >= den) q += 1;
      break;
  }
  return q;
}

Fixed::Fixed() : raw_(0), bits_(default_bits()) {}

Fixed::Fixed(BigInt raw, unsigned frac_bits) : raw_(std::move(raw)), bits_(frac_bits) {}

Fixed Fixed::zero(unsigned frac_bits) { return Fixed(BigInt(0), frac_bits); }

Fixed Fixed::from_integer(const BigInt& n, unsigned frac_bits) {
  return Fixed(n << frac_bits, frac_bits);
}

Fixed Fixed::from_double(double value, unsigned frac_bits) {
  require(std::isfinite(value), "fixed-point conversion of a non-finite double");
  if (value == 0.0) return zero(frac_bits);
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);  // value = mantissa * 2^exponent
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  BigInt m = scaled;
  const int shift = exponent - 53 + static_cast<int>(frac_bits);
  if (shift >= 0) return Fixed(m << shift, frac_bits);
  return Fixed(shift_down(m, static_cast<unsigned>(-shift), Rounding::kFloor), frac_bits);
}

Fixed Fixed::from_rational(const BigInt& num, const BigInt& den, unsigned frac_bits,
                           Rounding mode) {
  require(!den.is_zero(), "fixed-point rational with zero denominator");
  if (den.sign() < 0) return from_rational(-num, -den, frac_bits, mode);
  return Fixed(divide(num << frac_bits, den, mode), frac_bits);
}

Fixed Fixed::parse(std::string_view text, unsigned frac_bits) {
  auto bad = [&] { fail(ErrorKind::kInvalidArgument, "malformed number '" + std::string(text) + "'"); };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad();

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Fixed num = parse(text.substr(0, slash), 0);
    const Fixed den = parse(text.substr(slash + 1), 0);
    // Integers only on both sides.
    if (text.substr(0, slash).find_first_of(".eE") != std::string_view::npos ||
        text.substr(slash + 1).find_first_of(".eE") != std::string_view::npos)
      bad();
    if (den.is_zero()) bad();
    return from_rational(num.raw(), den.raw(), frac_bits, Rounding::kNearest);
  }

  bool negative = false;
  std::size_t i = 0;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  BigInt digits = 0;
  int frac_digits = 0;
  bool seen_dot = false;
  bool any_digit = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any_digit) bad();
  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') bad();
    ++i;
    const std::string rest(text.substr(i));
    if (rest.empty()) bad();
    char* end = nullptr;
    exponent = std::strtol(rest.c_str(), &end, 10);
    if (end == nullptr || *end != '\0') bad();
    if (std::labs(exponent) > 100000) bad();
  }
  if (negative) digits = -digits;
  const long scale = exponent - frac_digits;
  if (scale >= 0) return from_integer(digits * pow10(static_cast<unsigned>(scale)), frac_bits);
  return from_rational(digits, pow10(static_cast<unsigned>(-scale)), frac_bits, Rounding::kNearest);
}

unsigned Fixed::default_bits() {
  static const unsigned bits = [] {
    if (const char* env = std::getenv("EQUIFLOW_PRECISION_BITS")) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != env && *end == '\0' && v >= 64 && v <= 65536) return static_cast<unsigned>(v);
    }
    return 256u;
  }();
  return bits;
}

BigInt Fixed::floor() const { return shift_down(raw_, bits_, Rounding::kFloor); }

Fixed Fixed::frac() const {
  if (raw_.sign() >= 0) return Fixed(raw_ & (pow2(bits_) - 1), bits_);
  return Fixed(raw_ - (floor() << bits_), bits_);
}

Fixed Fixed::abs() const { return Fixed(raw_.sign() < 0 ? BigInt(-raw_) : raw_, bits_); }

Fixed Fixed::with_bits(unsigned frac_bits, Rounding mode) const {
  if (frac_bits == bits_) return *this;
  if (frac_bits > bits_) return Fixed(raw_ << (frac_bits - bits_), frac_bits);
  return Fixed(shift_down(raw_, bits_ - frac_bits, mode), frac_bits);
}

Fixed& Fixed::operator+=(const Fixed& other) {
  if (other.bits_ == bits_) {
    raw_ += other.raw_;
  } else if (other.bits_ < bits_) {
    raw_ += other.raw_ << (bits_ - other.bits_);
  } else {
    raw_ <<= (other.bits_ - bits_);
    bits_ = other.bits_;
    raw_ += other.raw_;
  }
  return *this;
}

Fixed& Fixed::operator-=(const Fixed& other) { return *this += -other; }

Fixed& Fixed::add_integer(const BigInt& n) {
  raw_ += n << bits_;
  return *this;
}

Fixed Fixed::operator-() const { return Fixed(-raw_, bits_); }

Fixed Fixed::mul(const Fixed& other, Rounding mode) const {
  const unsigned bits = std::max(bits_, other.bits_);
  const Fixed a = with_bits(bits);
  const Fixed b = other.with_bits(bits);
  return Fixed(shift_down(a.raw_ * b.raw_, bits, mode), bits);
}

Fixed Fixed::mul_integer(const BigInt& n) const { return Fixed(raw_ * n, bits_); }

Fixed Fixed::div(const Fixed& other, Rounding mode) const {
  require(!other.is_zero(), "fixed-point division by zero");
  const unsigned bits = std::max(bits_, other.bits_);
  const Fixed a = with_bits(bits);
  const Fixed b = other.with_bits(bits);
  return Fixed(divide(a.raw_ << bits, b.raw_, mode), bits);
}

Fixed Fixed::reciprocal(Rounding mode) const { return from_integer(1, bits_).div(*this, mode); }

bool operator==(const Fixed& a, const Fixed& b) {
  if (a.bits_ == b.bits_) return a.raw_ == b.raw_;
  const unsigned bits = std::max(a.bits_, b.bits_);
  return a.with_bits(bits).raw_ == b.with_bits(bits).raw_;
}

std::strong_ordering operator<=>(const Fixed& a, const Fixed& b) {
  if (a.bits_ == b.bits_) {
    const int c = a.raw_.compare(b.raw_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  const unsigned bits = std::max(a.bits_, b.bits_);
  return a.with_bits(bits) <=> b.with_bits(bits);
}

double Fixed::to_double() const {
  if (raw_.is_zero()) return 0.0;
  const bool negative = raw_.sign() < 0;
  const BigInt mag = negative ? BigInt(-raw_) : raw_;
  const unsigned length = boost::multiprecision::msb(mag) + 1;
  double result = 0.0;
  if (length <= 53) {
    result = std::ldexp(static_cast<double>(mag.convert_to<std::uint64_t>()),
                        -static_cast<int>(bits_));
  } else {
    const unsigned shift = length - 53;
    std::uint64_t mant = static_cast<std::uint64_t>(mag >> shift);
    const BigInt rem = mag & (pow2(shift) - 1);
    const BigInt half = pow2(shift - 1);
    if (rem > half || (rem == half && (mant & 1u))) ++mant;
    result = std::ldexp(static_cast<double>(mant), static_cast<int>(shift) - static_cast<int>(bits_));
  }
  return negative ? -result : result;
}

std::string Fixed::to_decimal(int digits) const {
  const bool negative = raw_.sign() < 0;
  const Fixed mag = abs();
  const BigInt ip = mag.floor();
  BigInt fp = mag.frac().raw();
  std::string out = (negative ? "-" : "") + ip.str();
  if (digits > 0) {
    out += '.';
    for (int i = 0; i < digits; ++i) {
      fp *= 10;
      const BigInt d = fp >> bits_;
      out += static_cast<char>('0' + d.convert_to<int>());
      fp -= d << bits_;
    }
  }
  return out;
}

Fixed sqrt_of_integer(unsigned n, unsigned frac_bits) {
  // floor(sqrt(n * 4^bits)) / 2^bits
  const BigInt scaled = BigInt(n) << (2 * frac_bits);
  return Fixed(boost::multiprecision::sqrt(scaled), frac_bits);
}

Fixed golden_ratio(unsigned frac_bits) {
  // (1 + sqrt 5) / 2 with floor rounding at frac_bits.
  const BigInt s = boost::multiprecision::sqrt(BigInt(5) << (2 * (frac_bits + 1)));
  return Fixed(((BigInt(1) << (frac_bits + 1)) + s) >> 2, frac_bits);
}

Fixed pi(unsigned frac_bits) {
  // Machin: pi = 16 atan(1/5) - 4 atan(1/239), evaluated with guard bits.
  const unsigned guard = 32;
  const unsigned work = frac_bits + guard;
  auto arctan_inv = [&](unsigned x) {
    const BigInt x2 = BigInt(x) * x;
    BigInt term = (BigInt(1) << work) / x;
    BigInt sum = term;
    for (unsigned k = 1; !term.is_zero(); ++k) {
      term /= x2;
      const BigInt t = term / (2 * k + 1);
      if (k % 2) sum -= t; else sum += t;
    }
    return sum;
  };
  const BigInt value = 16 * arctan_inv(5) - 4 * arctan_inv(239);
  return Fixed(value >> guard, frac_bits);
}

}  // namespace equiflow
