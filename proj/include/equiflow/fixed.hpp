#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace equiflow {

using BigInt = boost::multiprecision::cpp_int;

enum class Rounding { kFloor, kCeil, kNearest };

/// Binary fixed-point number raw / 2^frac_bits with an unbounded integer part.
///
/// Addition, subtraction and comparison are exact. Multiplication and division
/// round according to an explicit mode (floor unless stated otherwise). Values
/// with different fractional widths are aligned to the wider one.
class Fixed {
 public:
  Fixed();
  Fixed(BigInt raw, unsigned frac_bits);

  static Fixed zero(unsigned frac_bits);
  static Fixed from_integer(const BigInt& n, unsigned frac_bits);
  /// Exact when the double is a multiple of 2^-frac_bits, otherwise floored.
  static Fixed from_double(double value, unsigned frac_bits);
  static Fixed from_rational(const BigInt& num, const BigInt& den, unsigned frac_bits,
                             Rounding mode = Rounding::kNearest);
  /// Decimal literal such as "0.25", "-1.5e-3" or a rational "13/7".
  static Fixed parse(std::string_view text, unsigned frac_bits);

  /// Fractional budget: EQUIFLOW_PRECISION_BITS if set (64..65536), else 256.
  static unsigned default_bits();

  const BigInt& raw() const noexcept { return raw_; }
  unsigned frac_bits() const noexcept { return bits_; }

  bool is_negative() const { return raw_.sign() < 0; }
  bool is_zero() const { return raw_.is_zero(); }

  BigInt floor() const;
  /// x - floor(x), always in [0, 1).
  Fixed frac() const;
  Fixed abs() const;
  Fixed with_bits(unsigned frac_bits, Rounding mode = Rounding::kFloor) const;

  Fixed& operator+=(const Fixed& other);
  Fixed& operator-=(const Fixed& other);
  Fixed& add_integer(const BigInt& n);

  Fixed operator-() const;
  friend Fixed operator+(Fixed a, const Fixed& b) { return a += b; }
  friend Fixed operator-(Fixed a, const Fixed& b) { return a -= b; }

  Fixed mul(const Fixed& other, Rounding mode = Rounding::kFloor) const;
  Fixed mul_integer(const BigInt& n) const;
  Fixed div(const Fixed& other, Rounding mode = Rounding::kFloor) const;
  Fixed reciprocal(Rounding mode = Rounding::kFloor) const;

  friend bool operator==(const Fixed& a, const Fixed& b);
  friend std::strong_ordering operator<=>(const Fixed& a, const Fixed& b);

  /// Nearest double, correctly rounded.
  double to_double() const;
  /// Decimal rendering with the given number of fractional digits (truncated).
  std::string to_decimal(int digits) const;

 private:
  BigInt raw_;
  unsigned bits_;
};

/// Rounded integer division num / den for den > 0.
BigInt divide(const BigInt& num, const BigInt& den, Rounding mode);

Fixed golden_ratio(unsigned frac_bits);
Fixed sqrt_of_integer(unsigned n, unsigned frac_bits);
Fixed pi(unsigned frac_bits);

}  // namespace equiflow
