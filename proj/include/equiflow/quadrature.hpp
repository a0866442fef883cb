#pragma once

#include <functional>
#include <span>
#include <vector>

namespace equiflow {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre(int n);

/// Plain n-point rule on [a, b].
double gauss_legendre_apply(const std::function<double(double)>& f, double a, double b, int n = 10);

/// Globally adaptive composite Gauss-Legendre quadrature. Each panel is scored
/// by |G(panel) - G(left) - G(right)|; the worst panel is split until the summed
/// estimate falls below tol. Breakpoints seed the initial panels. Throws
/// nonconvergent-quadrature when max_intervals panels do not suffice.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, int max_intervals = 100000,
                                    std::span<const double> breakpoints = {});

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace equiflow
