#include "equiflow/section.hpp"

#include "equiflow/error.hpp"
#include "equiflow/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace equiflow {
namespace {

Fixed start_height(const Slope& alpha, const Fixed& h) {
  return (h.with_bits(alpha.frac_bits()) - alpha.value()).frac();
}

}  // namespace

double tau(const SetExpr& set, const Slope& alpha, const Fixed& h) {
  const unsigned bits = alpha.frac_bits();
  FlowWalker walker(Fixed::zero(bits), start_height(alpha, h), alpha, 1.0);
  const Fixed one = Fixed::from_integer(1, bits);
  CompensatedSum sum;
  TrajectorySegment seg;
  while (walker.next(seg, one)) sum.add(seg.duration * clipped_fraction(set, seg.seg));
  return sum.value();
}

double tau(const SetExpr& set, const Slope& alpha, double h) {
  require(h >= 0.0 && h <= 1.0, "tau height must lie in [0, 1]");
  return tau(set, alpha, Fixed::from_double(h, alpha.frac_bits()));
}

TauSamples tau_samples(const SetExpr& set, const Slope& alpha, int n) {
  require(n >= 2, "tau sampling needs n >= 2");
  TauSamples out;
  out.spacing = 1.0 / n;
  out.grid.resize(n);
  out.values.resize(n);
  const unsigned bits = alpha.frac_bits();
  for (int i = 0; i < n; ++i) {
    const Fixed h = Fixed::from_rational(i, n, bits);
    out.grid[i] = static_cast<double>(i) / n;
    out.values[i] = tau(set, alpha, h);
  }
  return out;
}

FubiniReport fubini_check(const SetExpr& set, const Slope& alpha, int n) {
  require(n >= 16, "Fubini check needs n >= 16");
  const TauSamples samples = tau_samples(set, alpha, n);
  CompensatedSum sum;
  for (double v : samples.values) sum.add(v);
  FubiniReport report;
  report.mean = sum.value() / n;
  report.area = area(set);
  report.difference = report.mean - report.area;
  return report;
}

DiscretizationPair discretization_identity(const SetExpr& set, const Slope& alpha, double x0,
                                           long n) {
  require(n >= 1, "discretization identity needs n >= 1");
  require(x0 >= 0.0 && x0 < 1.0, "x0 must lie in [0, 1)");
  DiscretizationPair pair;
  pair.continuous = occupation_time(set, {0.0, x0}, alpha, static_cast<double>(n));
  const unsigned bits = alpha.frac_bits();
  Fixed h = Fixed::from_double(x0, bits);
  CompensatedSum sum;
  for (long k = 1; k <= n; ++k) {
    h = (h + alpha.value()).frac();
    sum.add(tau(set, alpha, h));
  }
  pair.discrete = sum.value();
  return pair;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kConvergent: return "convergent";
    case Verdict::kDivergent: return "divergent";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

SobolevReport sobolev_seminorm(const SetExpr& set, const Slope& alpha, double s, int levels,
                               const SobolevOptions& options) {
  require(s > 0.0 && s <= 4.0, "Sobolev exponent must lie in (0, 4]");
  require(levels >= 1 && levels <= 8, "levels must lie in [1, 8]");
  require(options.base_n >= 2, "base grid needs at least 2 points");
  const int finest = options.base_n << (levels - 1);
  const TauSamples samples = tau_samples(set, alpha, finest);

  SobolevReport report;
  report.s = s;
  for (int level = 0; level < levels; ++level) {
    const int stride = 1 << (levels - 1 - level);
    const int n = finest / stride;
    const double dh = 1.0 / n;
    CompensatedSum sum;
    for (int i = 0; i < n; ++i) {
      const double a = samples.values[static_cast<std::size_t>(i) * stride];
      const double b = samples.values[static_cast<std::size_t>((i + 1) % n) * stride];
      sum.add(std::pow(std::abs(b - a), s));
    }
    report.levels.push_back({dh, sum.value() * std::pow(dh, 1.0 - s)});
  }
  if (levels >= 3) {
    const double p0 = report.levels[levels - 3].value;
    const double p1 = report.levels[levels - 2].value;
    const double p2 = report.levels[levels - 1].value;
    const double hi = std::max({p0, p1, p2}), lo = std::min({p0, p1, p2});
    if (p0 > 0.0 && p1 >= options.growth * p0 && p2 >= options.growth * p1)
      report.verdict = Verdict::kDivergent;
    else if (hi == 0.0 || (lo > 0.0 && hi <= (1.0 + options.agreement) * lo))
      report.verdict = Verdict::kConvergent;
  }
  return report;
}

double tau_density(const Density& f, const Slope& alpha, double h, double tol) {
  require(h >= 0.0 && h <= 1.0, "tau height must lie in [0, 1]");
  require(tol > 0.0 && tol <= 1e-6, "tau_density tolerance must be in (0, 1e-6]");
  const unsigned bits = alpha.frac_bits();
  FlowWalker walker(Fixed::zero(bits), start_height(alpha, Fixed::from_double(h, bits)), alpha,
                    1.0);
  const Fixed one = Fixed::from_integer(1, bits);
  CompensatedSum sum;
  TrajectorySegment seg;
  while (walker.next(seg, one)) {
    if (seg.duration <= 0.0) continue;
    const Segment s = seg.seg;
    auto along = [&](double u) {
      const Point p = s.at(u);
      return f(p.x, p.y);
    };
    sum.add(seg.duration * integrate_adaptive(along, 0.0, 1.0, tol, 4096).value);
  }
  return sum.value();
}

}  // namespace equiflow
