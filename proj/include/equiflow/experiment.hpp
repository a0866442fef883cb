#pragma once

#include "equiflow/boundary.hpp"
#include "equiflow/discrepancy.hpp"
#include "equiflow/flow.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace equiflow {

enum class Regime { kA, kB, kC, kD };
Regime parse_regime(const std::string& text);
std::string to_string(Regime r);

struct GridSpec {
  double t0 = 10.0;
  double ratio = 1.5;
  /// Either a point count or an upper bound; count wins when both are set.
  int count = 0;
  double t_max = 0.0;
};

/// t0, t0 r, t0 r^2, ... : count points, or every point up to t_max.
std::vector<double> geometric_grid(const GridSpec& spec);

struct ExperimentConfig {
  std::string experiment = "error-scaling";  // | liouville | discrepancy-scaling
  std::string scene_path;
  std::optional<SetExpr> set;
  std::string slope = "golden";
  Point start;
  GridSpec grid;
  Regime regime = Regime::kB;
  /// Exponent of the per-decade statistic.
  double gamma = 0.6;
  /// sigma for the regime D exponent 1/sigma'.
  double sigma = 2.0;
  double area_tol = 1e-9;
  double degenerate_tol = 1e-12;
  std::string csv_path;
  std::string plot_path;
  // Liouville demo.
  std::vector<BigInt> digits;
  Interval rect_x{0.0, 1.0};
  Interval rect_y{0.0, 1.0};
  double threshold_exponent = 0.4;
  // Discrepancy scaling.
  int log2_min = 6;
  int log2_max = 20;
  double p = 2.0;
  double shift = 0.0;
  /// Canonical dump of the source document, hashed into output headers.
  std::string source;
};

/// Scene paths are resolved against base_dir.
ExperimentConfig parse_config(const nlohmann::json& doc, const std::string& base_dir);
ExperimentConfig load_config(const std::string& path);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);
std::string config_digest(const ExperimentConfig& cfg);

Slope slope_from_json(const nlohmann::json& v);

struct GammaStat {
  double gamma = 0.0;
  double sup = 0.0;
  double at_t = 0.0;
};

struct DecadeStat {
  double t_lo = 0.0;  // decade (t_lo, t_hi]
  double t_hi = 0.0;
  double sup = 0.0;
  int points = 0;
};

struct ScalingReport {
  ErrorCurve curve;
  std::vector<GammaStat> gammas;
  std::vector<DecadeStat> decades;
  double decade_gamma = 0.6;
  bool alpha_degenerate = false;
  std::vector<std::string> warnings;
  std::string verdict;
};

/// sup over grid points with T > 1 of |Delta(T)| / log(T)^gamma.
GammaStat sup_statistic(const ErrorCurve& curve, double gamma);
std::vector<DecadeStat> decade_sups(const ErrorCurve& curve, double gamma);

ScalingReport run_error_scaling(const ExperimentConfig& cfg);

struct LiouvilleReport {
  std::vector<Convergent> convergents;
  ErrorCurve curve;
  double threshold_exponent = 0.4;
  double max_ratio = 0.0;  // max |Delta(T)| / T^exponent
  double max_ratio_t = 0.0;
  bool witness_found = false;
  double witness_t = 0.0;  // first grid T with ratio > 1
  double witness_delta = 0.0;
};

/// Scan T on a geometric grid from 1 (ratio grid_ratio) up to t_max.
LiouvilleReport run_liouville_demo(std::vector<BigInt> digits, Interval rect_x, Interval rect_y,
                                   double t_max, double grid_ratio = 1.005,
                                   Point start = {0.0, 0.0}, double exponent = 0.4);
LiouvilleReport run_liouville_demo(const Slope& alpha, Interval rect_x, Interval rect_y,
                                   double t_max, double grid_ratio = 1.005,
                                   Point start = {0.0, 0.0}, double exponent = 0.4);

struct DiscrepancyRow {
  long n = 0;
  double d_inf = 0.0;
  double d_p = 0.0;
  double scaled_p = 0.0;    // N D_p / log(N)^(1/p')
  double scaled_inf = 0.0;  // N D_inf / log N
};

struct DiscrepancyScalingReport {
  double p = 2.0;
  std::vector<DiscrepancyRow> rows;
};

/// Dyadic N = 2^log2_min .. 2^log2_max; one Kronecker set, read by prefixes.
DiscrepancyScalingReport run_discrepancy_scaling(const Slope& alpha, int log2_min, int log2_max,
                                                 double p, double shift = 0.0);

}  // namespace equiflow
