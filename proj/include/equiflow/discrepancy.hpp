#pragma once

#include "equiflow/fixed.hpp"
#include "equiflow/slope.hpp"

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace equiflow {

/// Finite point set in [0, 1) with a sorted copy. Kronecker sets also keep the
/// exact fixed-point coordinates and the generating data.
class PointSet1D {
 public:
  explicit PointSet1D(std::vector<double> points);
  PointSet1D(std::vector<Fixed> exact, const Slope& alpha, const Fixed& x0);

  std::size_t size() const { return points_.size(); }
  std::span<const double> points() const { return points_; }
  std::span<const double> sorted() const { return sorted_; }
  bool has_exact() const { return !exact_.empty(); }
  std::span<const Fixed> exact() const { return exact_; }
  /// Generator of a Kronecker set, when known.
  const std::optional<Slope>& alpha() const { return alpha_; }
  const Fixed& shift() const { return x0_; }

 private:
  std::vector<double> points_;
  std::vector<double> sorted_;
  std::vector<Fixed> exact_;
  std::optional<Slope> alpha_;
  Fixed x0_;
};

/// {k alpha + x0}, k = 1 .. n, accumulated in fixed point. Throws
/// precision-exhausted when n would push the per-point error above 2^-100.
PointSet1D kronecker_points(const Slope& alpha, double x0, long n);

enum class DiscrepancyMethod { kExactClosedForm, kNumericQuadrature };

struct DiscrepancyValue {
  double p = 0.0;  // infinity for the star discrepancy
  double value = 0.0;
  DiscrepancyMethod method = DiscrepancyMethod::kExactClosedForm;
};

/// max_i max(i/N - x_(i), x_(i) - (i-1)/N).
DiscrepancyValue star_discrepancy(const PointSet1D& set);

/// || #(P cap [0,x))/N - x ||_{L^p}, summed gap by gap from the antiderivative
/// of |affine|^p. p = infinity returns the star discrepancy.
DiscrepancyValue lp_discrepancy(const PointSet1D& set, double p);

/// Same quantity by adaptive quadrature, one panel per gap.
DiscrepancyValue lp_discrepancy_numeric(const PointSet1D& set, double p, double tol = 1e-14);

/// N^-1 sum_j exp(-2 pi i k x_j), compensated direct summation with exact
/// phases when available.
std::complex<double> fourier_coefficient(const PointSet1D& set, long k);

/// Geometric-sum closed form for a Kronecker set; requires the generator.
std::complex<double> fourier_coefficient_closed_form(const PointSet1D& set, long k);

/// min(1, 1 / (2 N dist(k alpha, Z))).
double fourier_bound(const Slope& alpha, long n, long k);

/// D_p * V; p in D and p_prime must be Holder conjugates.
double kh_bound(const DiscrepancyValue& d, double v, double p_prime);

/// ||f'||_{L^p'} from samples on the uniform grid i / (n - 1); trapezoid rule,
/// maximum for p' = infinity.
double lp_variation_1d(std::span<const double> f_prime_samples, double p_prime);

/// Number of distinct gaps of the sorted exact points, circular gap included.
int distinct_gap_count(const PointSet1D& set);

}  // namespace equiflow
