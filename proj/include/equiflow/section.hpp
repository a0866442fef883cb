#pragma once

#include "equiflow/flow.hpp"

#include <string>
#include <vector>

namespace equiflow {

/// Time the unit backward orbit ending at (1, h) spends in E. Realized as the
/// forward unit segment from (0, {h - alpha}).
double tau(const SetExpr& set, const Slope& alpha, double h);
double tau(const SetExpr& set, const Slope& alpha, const Fixed& h);

struct TauSamples {
  std::vector<double> grid;
  std::vector<double> values;
  double spacing = 0.0;
};

/// tau at h_i = i / n, i = 0 .. n-1.
TauSamples tau_samples(const SetExpr& set, const Slope& alpha, int n);

struct FubiniReport {
  double mean = 0.0;
  double area = 0.0;
  double difference = 0.0;
};

/// Periodic trapezoid mean of tau against the area of E.
FubiniReport fubini_check(const SetExpr& set, const Slope& alpha, int n);

struct DiscretizationPair {
  double continuous = 0.0;
  double discrete = 0.0;
};

/// Occupation from (0, x0) up to time n, against the sum of tau over the
/// return heights {k alpha + x0}, k = 1 .. n.
DiscretizationPair discretization_identity(const SetExpr& set, const Slope& alpha, double x0,
                                           long n);

enum class Verdict { kConvergent, kDivergent, kInconclusive };
std::string to_string(Verdict v);

struct SobolevLevel {
  double dh = 0.0;
  double value = 0.0;
};

struct SobolevOptions {
  /// Grid size of the coarsest level.
  int base_n = 256;
  /// Each of the last two level-to-level ratios at least this reads divergent.
  double growth = 1.3;
  /// Last three levels within this relative spread read convergent.
  double agreement = 0.10;
};

struct SobolevReport {
  double s = 0.0;
  std::vector<SobolevLevel> levels;  // decreasing dh
  Verdict verdict = Verdict::kInconclusive;
};

/// Discrete seminorm proxy sum_i |tau(h_{i+1}) - tau(h_i)|^s dh^(1-s) on
/// periodic grids dh = dh0 / 2^k, k = 0 .. levels-1.
SobolevReport sobolev_seminorm(const SetExpr& set, const Slope& alpha, double s, int levels,
                               const SobolevOptions& options = {});

/// Integral of f along the unit backward orbit ending at (1, h).
double tau_density(const Density& f, const Slope& alpha, double h, double tol);

}  // namespace equiflow
