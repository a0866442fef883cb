#pragma once

#include "equiflow/fixed.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace equiflow {

struct Convergent {
  BigInt p;
  BigInt q;
};

/// Unit vector (1, alpha) / sqrt(1 + alpha^2).
struct Direction {
  double x = 1.0;
  double y = 0.0;
};

/// A flow direction: an arbitrary-precision value, the partial quotients
/// [a0; a1, a2, ...] known for it, and the matching convergents p_i / q_i.
///
/// Slopes built from a value keep only the digits the value determines
/// (q_i^2 below the fractional budget). Slopes built from partial quotients keep
/// exactly the digits they were given.
class Slope {
 public:
  static Slope from_value(Fixed value);
  /// Value is the final convergent, rounded so that the expansion of the stored
  /// value reproduces the given digits at full length.
  static Slope from_partial_quotients(std::vector<BigInt> digits,
                                      unsigned frac_bits = Fixed::default_bits());
  static Slope golden(unsigned frac_bits = Fixed::default_bits());
  /// (sqrt(5) - 1) / 2 = [0; 1, 1, ...].
  static Slope golden_conjugate(unsigned frac_bits = Fixed::default_bits());
  static Slope sqrt2(unsigned frac_bits = Fixed::default_bits());
  static Slope pi_minus_3(unsigned frac_bits = Fixed::default_bits());

  /// Accepts "golden", "phi", "invphi", "sqrt2", "pi-3", a decimal or rational literal,
  /// or a digit list "[a0; a1, a2, ...]".
  static Slope parse(std::string_view spec, unsigned frac_bits = Fixed::default_bits());

  const Fixed& value() const noexcept { return value_; }
  double to_double() const noexcept { return approx_; }
  unsigned frac_bits() const noexcept { return value_.frac_bits(); }
  std::span<const BigInt> partial_quotients() const noexcept { return digits_; }
  std::span<const Convergent> convergents() const noexcept { return convergents_; }
  Direction direction() const;

  /// Stable text form of the value, used in report digests.
  std::string digest() const;

 private:
  Slope(Fixed value, std::vector<BigInt> digits);

  Fixed value_;
  double approx_ = 0.0;
  std::vector<BigInt> digits_;
  std::vector<Convergent> convergents_;
};

std::vector<Convergent> convergents_of(std::span<const BigInt> digits);

/// [a0; a1 ... a_depth] of the value treated as the exact rational raw / 2^bits.
/// Stops early when the expansion terminates (last digit then >= 2). Throws
/// precision-exhausted when q_depth^2 exceeds 2^frac_bits.
std::vector<BigInt> continued_fraction(const Fixed& value, int depth);

/// Folds a trailing 1 into the previous digit: [.., a, 1] -> [.., a + 1].
std::vector<BigInt> canonical_digits(std::vector<BigInt> digits);

/// Depth-truncated surrogate: true iff a1..a_depth are all <= bound.
bool is_badly_approximable(const Slope& slope, int depth, const BigInt& bound);

/// Greedy Ostrowski digits: n = sum b_i q_i with b_i indexed like the
/// convergents of the slope.
std::vector<BigInt> ostrowski_digits(const BigInt& n, const Slope& slope);

}  // namespace equiflow
