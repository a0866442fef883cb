#include "equiflow/discrepancy.hpp"

#include "equiflow/error.hpp"
#include "equiflow/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace equiflow {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Integral of |y|^p over [lo, hi] of the same sign, without cancellation.
double same_sign_power_integral(double lo, double hi, double p) {
  const double u = std::max(std::abs(lo), std::abs(hi));
  const double v = std::min(std::abs(lo), std::abs(hi));
  if (u == 0.0) return 0.0;
  const double q = p + 1.0;
  const double up = std::pow(u, q) / q;
  if (v == 0.0) return up;
  // (u^q - v^q)/q = -u^q expm1(q log(v/u)) / q, with v/u = 1 - (u - v)/u.
  return -up * std::expm1(q * std::log1p(-(u - v) / u));
}

/// Integral over x in [a, b] of |c - x|^p.
double gap_integral(double c, double a, double b, double p) {
  if (!(b > a)) return 0.0;
  const double hi = c - a, lo = c - b;  // y = c - x runs over [lo, hi]
  if (lo >= 0.0 || hi <= 0.0) return same_sign_power_integral(lo, hi, p);
  return same_sign_power_integral(lo, 0.0, p) + same_sign_power_integral(0.0, hi, p);
}

double sin_pi_frac(const Fixed& x) {
  // sin(pi x) for x in [0, 2), reduced to keep small arguments accurate.
  const double d = x.to_double();
  if (d < 1.0) return std::sin(std::numbers::pi * std::min(d, 1.0 - d));
  const double e = d - 1.0;
  return -std::sin(std::numbers::pi * std::min(e, 1.0 - e));
}

std::complex<double> unit_phase(const Fixed& frac_turns) {
  // exp(-2 pi i x) with x reduced to [-1/2, 1/2).
  double x = frac_turns.to_double();
  if (x >= 0.5) x -= 1.0;
  return {std::cos(2.0 * std::numbers::pi * x), -std::sin(2.0 * std::numbers::pi * x)};
}

Fixed mod_two(const Fixed& x) {
  const BigInt two_floor = (x.floor() >> 1) << 1;
  Fixed r = x;
  r.add_integer(-two_floor);
  return r;
}

}  // namespace

PointSet1D::PointSet1D(std::vector<double> points) : points_(std::move(points)) {
  require(!points_.empty(), "point set must be nonempty");
  for (double x : points_) require(x >= 0.0 && x < 1.0, "points must lie in [0, 1)");
  sorted_ = points_;
  std::sort(sorted_.begin(), sorted_.end());
}

PointSet1D::PointSet1D(std::vector<Fixed> exact, const Slope& alpha, const Fixed& x0)
    : exact_(std::move(exact)), alpha_(alpha), x0_(x0) {
  require(!exact_.empty(), "point set must be nonempty");
  points_.reserve(exact_.size());
  for (const Fixed& x : exact_) {
    double d = x.to_double();
    if (d >= 1.0) d = std::nextafter(1.0, 0.0);
    points_.push_back(d);
  }
  sorted_ = points_;
  std::sort(sorted_.begin(), sorted_.end());
}

PointSet1D kronecker_points(const Slope& alpha, double x0, long n) {
  require(n >= 1, "Kronecker set needs n >= 1");
  require(std::isfinite(x0), "shift must be finite");
  const unsigned bits = alpha.frac_bits();
  if (std::log2(static_cast<double>(n)) + 100.0 > bits)
    fail(ErrorKind::kPrecisionExhausted,
         "n = " + std::to_string(n) + " needs more than " + std::to_string(bits) +
             " fractional bits");
  const Fixed shift = Fixed::from_double(x0, bits);
  const Fixed step = alpha.value().frac();
  std::vector<Fixed> exact;
  exact.reserve(static_cast<std::size_t>(n));
  Fixed acc = shift.frac();
  for (long k = 1; k <= n; ++k) {
    acc += step;
    if (acc.floor() >= 1) acc.add_integer(-1);
    exact.push_back(acc);
  }
  return PointSet1D(std::move(exact), alpha, shift);
}

DiscrepancyValue star_discrepancy(const PointSet1D& set) {
  const auto xs = set.sorted();
  const double n = static_cast<double>(xs.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double above = static_cast<double>(i + 1) / n - xs[i];
    const double below = xs[i] - static_cast<double>(i) / n;
    worst = std::max({worst, above, below});
  }
  return {kInf, worst, DiscrepancyMethod::kExactClosedForm};
}

DiscrepancyValue lp_discrepancy(const PointSet1D& set, double p) {
  if (std::isinf(p)) return star_discrepancy(set);
  require(p >= 1.0, "discrepancy exponent must be at least 1");
  const auto xs = set.sorted();
  const std::size_t n = xs.size();
  CompensatedSum sum;
  double left = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double right = i < n ? xs[i] : 1.0;
    sum.add(gap_integral(static_cast<double>(i) / static_cast<double>(n), left, right, p));
    left = right;
  }
  return {p, std::pow(std::max(sum.value(), 0.0), 1.0 / p), DiscrepancyMethod::kExactClosedForm};
}

DiscrepancyValue lp_discrepancy_numeric(const PointSet1D& set, double p, double tol) {
  require(p >= 1.0 && std::isfinite(p), "numeric discrepancy needs finite p >= 1");
  const auto xs = set.sorted();
  const std::size_t n = xs.size();
  CompensatedSum sum;
  double left = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double right = i < n ? xs[i] : 1.0;
    if (right > left) {
      const double c = static_cast<double>(i) / static_cast<double>(n);
      auto f = [&](double x) { return std::pow(std::abs(c - x), p); };
      const double brk[] = {c};
      sum.add(integrate_adaptive(f, left, right, tol, 100000, brk).value);
    }
    left = right;
  }
  return {p, std::pow(std::max(sum.value(), 0.0), 1.0 / p), DiscrepancyMethod::kNumericQuadrature};
}

std::complex<double> fourier_coefficient(const PointSet1D& set, long k) {
  require(k != 0, "Fourier coefficient needs k != 0");
  CompensatedSum re, im;
  if (set.has_exact()) {
    for (const Fixed& x : set.exact()) {
      const std::complex<double> z = unit_phase(x.mul_integer(k).frac());
      re.add(z.real());
      im.add(z.imag());
    }
  } else {
    for (double x : set.points()) {
      const double phase = 2.0 * std::numbers::pi * std::fmod(static_cast<double>(k) * x, 1.0);
      re.add(std::cos(phase));
      im.add(-std::sin(phase));
    }
  }
  const double n = static_cast<double>(set.size());
  return {re.value() / n, im.value() / n};
}

std::complex<double> fourier_coefficient_closed_form(const PointSet1D& set, long k) {
  require(k != 0, "Fourier coefficient needs k != 0");
  require(set.alpha().has_value(), "closed form needs a Kronecker set");
  const Slope& alpha = *set.alpha();
  const long n = static_cast<long>(set.size());
  // sum_{j=1}^{n} e^{-2 pi i j b} = e^{-i pi (n+1) b} sin(pi n b) / sin(pi b), b = {k alpha}.
  const Fixed b = alpha.value().mul_integer(k).frac();
  std::complex<double> sum;
  const double sb = sin_pi_frac(b);
  if (b.is_zero()) {
    sum = static_cast<double>(n);
  } else {
    const Fixed nb = mod_two(b.mul_integer(n));
    const Fixed half_turns = mod_two(b.mul_integer(n + 1));
    const double angle = std::numbers::pi * half_turns.to_double();
    const double mag = sin_pi_frac(nb) / sb;
    sum = std::complex<double>(std::cos(angle), -std::sin(angle)) * mag;
  }
  const std::complex<double> shift = unit_phase(set.shift().mul_integer(k).frac());
  return shift * sum / static_cast<double>(n);
}

double fourier_bound(const Slope& alpha, long n, long k) {
  require(n >= 1 && k != 0, "bound needs n >= 1 and k != 0");
  const double b = alpha.value().mul_integer(k).frac().to_double();
  const double dist = std::min(b, 1.0 - b);
  if (dist == 0.0) return 1.0;
  return std::min(1.0, 1.0 / (2.0 * static_cast<double>(n) * dist));
}

double kh_bound(const DiscrepancyValue& d, double v, double p_prime) {
  require(v >= 0.0, "variation must be nonnegative");
  const double inv_p = std::isinf(d.p) ? 0.0 : 1.0 / d.p;
  const double inv_q = std::isinf(p_prime) ? 0.0 : 1.0 / p_prime;
  require(std::abs(inv_p + inv_q - 1.0) < 1e-12, "p and p' must be Holder conjugates");
  return d.value * v;
}

double lp_variation_1d(std::span<const double> samples, double p_prime) {
  require(samples.size() >= 2, "need at least 2 derivative samples");
  require(p_prime >= 1.0, "p' must be at least 1");
  if (std::isinf(p_prime)) {
    double m = 0.0;
    for (double v : samples) m = std::max(m, std::abs(v));
    return m;
  }
  const double h = 1.0 / static_cast<double>(samples.size() - 1);
  CompensatedSum sum;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double w = (i == 0 || i + 1 == samples.size()) ? 0.5 : 1.0;
    sum.add(w * std::pow(std::abs(samples[i]), p_prime));
  }
  return std::pow(sum.value() * h, 1.0 / p_prime);
}

int distinct_gap_count(const PointSet1D& set) {
  require(set.has_exact(), "exact gap count needs exact points");
  std::vector<BigInt> raw;
  const unsigned bits = set.exact().front().frac_bits();
  raw.reserve(set.size());
  for (const Fixed& x : set.exact()) raw.push_back(x.with_bits(bits).raw());
  std::sort(raw.begin(), raw.end());
  std::vector<BigInt> gaps;
  for (std::size_t i = 1; i < raw.size(); ++i) gaps.push_back(raw[i] - raw[i - 1]);
  gaps.push_back((BigInt(1) << bits) - raw.back() + raw.front());
  std::sort(gaps.begin(), gaps.end());
  gaps.erase(std::unique(gaps.begin(), gaps.end()), gaps.end());
  return static_cast<int>(gaps.size());
}

}  // namespace equiflow
