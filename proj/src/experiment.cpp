#include "equiflow/experiment.hpp"

#include "equiflow/error.hpp"
#include "equiflow/scene.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace equiflow {
namespace {

using nlohmann::json;

double get_number(const json& v, const std::string& what) {
  require(v.is_number(), what + " must be a number");
  return v.get<double>();
}

std::string number_text(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

BigInt digit_from_json(const json& v) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_number()) {
    const double d = v.get<double>();
    require(d == std::floor(d) && std::abs(d) < 9e15, "partial quotient must be an integer");
    return BigInt(static_cast<long long>(d));
  }
  require(v.is_string(), "partial quotient must be an integer or a string");
  return BigInt(v.get<std::string>());
}

double hypothesis_exponent(Regime r, bool degenerate, double sigma) {
  switch (r) {
    case Regime::kA:
    case Regime::kC: return 1.0;
    case Regime::kB: return 0.5;
    case Regime::kD: return degenerate ? (sigma - 1.0) / sigma : 0.5;
  }
  return 1.0;
}

}  // namespace

Regime parse_regime(const std::string& text) {
  if (text == "A" || text == "a") return Regime::kA;
  if (text == "B" || text == "b") return Regime::kB;
  if (text == "C" || text == "c") return Regime::kC;
  if (text == "D" || text == "d") return Regime::kD;
  fail(ErrorKind::kInvalidArgument, "regime must be one of A, B, C, D");
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::kA: return "A";
    case Regime::kB: return "B";
    case Regime::kC: return "C";
    case Regime::kD: return "D";
  }
  return "?";
}

std::vector<double> geometric_grid(const GridSpec& spec) {
  require(spec.t0 > 0.0 && std::isfinite(spec.t0), "grid t0 must be positive");
  require(spec.ratio > 1.0 && std::isfinite(spec.ratio), "grid ratio must exceed 1");
  require(spec.count > 0 || spec.t_max >= spec.t0, "grid needs a count or t_max >= t0");
  std::vector<double> out;
  for (int k = 0;; ++k) {
    const double t = spec.t0 * std::pow(spec.ratio, k);
    if (spec.count > 0 ? k >= spec.count : t > spec.t_max * (1.0 + 1e-12)) break;
    out.push_back(t);
    require(out.size() <= 10000, "grid has more than 10^4 points");
  }
  return out;
}

Slope slope_from_json(const json& v) {
  if (v.is_string()) return Slope::parse(v.get<std::string>());
  if (v.is_number()) return Slope::parse(number_text(v.get<double>()));
  require(v.is_array() && !v.empty(), "slope must be a name, a number or a digit list");
  std::vector<BigInt> digits;
  for (const json& d : v) digits.push_back(digit_from_json(d));
  return Slope::from_partial_quotients(std::move(digits));
}

ExperimentConfig parse_config(const json& doc, const std::string& base_dir) {
  require(doc.is_object(), "config must be a JSON object");
  ExperimentConfig cfg;
  cfg.source = doc.dump();
  if (doc.contains("experiment")) cfg.experiment = doc.at("experiment").get<std::string>();
  require(cfg.experiment == "error-scaling" || cfg.experiment == "liouville" ||
              cfg.experiment == "discrepancy-scaling",
          "unknown experiment \"" + cfg.experiment + "\"");
  if (doc.contains("scene")) {
    const json& scene = doc.at("scene");
    if (scene.is_string()) {
      std::filesystem::path p(scene.get<std::string>());
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      cfg.scene_path = p.lexically_normal().string();
      cfg.set = load_scene(cfg.scene_path);
    } else {
      cfg.set = parse_scene(scene);
    }
  }
  if (doc.contains("slope")) {
    const json& s = doc.at("slope");
    cfg.slope = s.is_string() ? s.get<std::string>() : s.dump();
    if (s.is_array()) {
      for (const json& d : s) cfg.digits.push_back(digit_from_json(d));
    }
    (void)slope_from_json(s);
  }
  if (doc.contains("digits")) {
    cfg.digits.clear();
    for (const json& d : doc.at("digits")) cfg.digits.push_back(digit_from_json(d));
  }
  if (doc.contains("start")) {
    const json& x = doc.at("start");
    require(x.is_array() && x.size() == 2, "start must be [x1, x2]");
    cfg.start = {get_number(x[0], "start"), get_number(x[1], "start")};
  }
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    if (g.contains("t0")) cfg.grid.t0 = get_number(g.at("t0"), "grid.t0");
    if (g.contains("ratio")) cfg.grid.ratio = get_number(g.at("ratio"), "grid.ratio");
    if (g.contains("count")) cfg.grid.count = g.at("count").get<int>();
    if (g.contains("t_max")) cfg.grid.t_max = get_number(g.at("t_max"), "grid.t_max");
    require(cfg.grid.count <= 10000, "grid count must not exceed 10^4");
  }
  if (doc.contains("regime")) cfg.regime = parse_regime(doc.at("regime").get<std::string>());
  if (doc.contains("gamma")) cfg.gamma = get_number(doc.at("gamma"), "gamma");
  if (doc.contains("sigma")) cfg.sigma = get_number(doc.at("sigma"), "sigma");
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    if (t.contains("area")) cfg.area_tol = get_number(t.at("area"), "tolerances.area");
    if (t.contains("degenerate"))
      cfg.degenerate_tol = get_number(t.at("degenerate"), "tolerances.degenerate");
  }
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (o.contains("csv")) cfg.csv_path = o.at("csv").get<std::string>();
    if (o.contains("plot")) cfg.plot_path = o.at("plot").get<std::string>();
  }
  if (doc.contains("rect")) {
    const json& r = doc.at("rect");
    require(r.contains("x") && r.contains("y"), "rect needs x and y ranges");
    cfg.rect_x = {get_number(r.at("x").at(0), "rect.x"), get_number(r.at("x").at(1), "rect.x")};
    cfg.rect_y = {get_number(r.at("y").at(0), "rect.y"), get_number(r.at("y").at(1), "rect.y")};
  }
  if (doc.contains("t_max")) cfg.grid.t_max = get_number(doc.at("t_max"), "t_max");
  if (doc.contains("threshold_exponent"))
    cfg.threshold_exponent = get_number(doc.at("threshold_exponent"), "threshold_exponent");
  if (doc.contains("log2_n")) {
    const json& r = doc.at("log2_n");
    require(r.is_array() && r.size() == 2, "log2_n must be [min, max]");
    cfg.log2_min = r[0].get<int>();
    cfg.log2_max = r[1].get<int>();
  }
  if (doc.contains("p")) {
    const json& p = doc.at("p");
    cfg.p = p.is_string() && p.get<std::string>() == "inf"
                ? std::numeric_limits<double>::infinity()
                : get_number(p, "p");
  }
  if (doc.contains("shift")) cfg.shift = get_number(doc.at("shift"), "shift");

  if (cfg.experiment == "error-scaling")
    require(cfg.set.has_value(), "error-scaling needs a scene");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open config " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    fail(ErrorKind::kInvalidArgument, "config " + path + ": " + e.what());
  }
  const std::string base = std::filesystem::path(path).parent_path().string();
  return parse_config(doc, base.empty() ? "." : base);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_digest(const ExperimentConfig& cfg) {
  std::string text = cfg.source;
  if (cfg.set) text += "|" + cfg.set->canonical();
  return fnv1a_hex(text);
}

GammaStat sup_statistic(const ErrorCurve& curve, double gamma) {
  GammaStat stat{gamma, 0.0, 0.0};
  for (const ErrorPoint& p : curve.points) {
    if (!(p.t > 1.0)) continue;
    const double v = std::abs(p.delta) / std::pow(std::log(p.t), gamma);
    if (v > stat.sup) {
      stat.sup = v;
      stat.at_t = p.t;
    }
  }
  return stat;
}

std::vector<DecadeStat> decade_sups(const ErrorCurve& curve, double gamma) {
  std::vector<DecadeStat> out;
  for (const ErrorPoint& p : curve.points) {
    if (!(p.t > 1.0)) continue;
    // Decade (10^k, 10^(k+1)]; exact powers of ten close their decade.
    int k = static_cast<int>(std::ceil(std::log10(p.t))) - 1;
    if (std::pow(10.0, k + 1) < p.t) ++k;
    if (k >= 0 && std::pow(10.0, k) >= p.t) --k;
    if (out.empty() || out.back().t_hi < p.t) {
      out.push_back({std::pow(10.0, k), std::pow(10.0, k + 1), 0.0, 0});
    }
    DecadeStat& d = out.back();
    d.sup = std::max(d.sup, std::abs(p.delta) / std::pow(std::log(p.t), gamma));
    ++d.points;
  }
  return out;
}

ScalingReport run_error_scaling(const ExperimentConfig& cfg) {
  require(cfg.set.has_value(), "error scaling needs a scene");
  const SetExpr& set = *cfg.set;
  const Slope alpha = cfg.digits.empty() ? Slope::parse(cfg.slope)
                                         : Slope::from_partial_quotients(cfg.digits);
  AreaOptions opts;
  opts.tol = cfg.area_tol;
  const double set_area = area(set, opts);

  ScalingReport report;
  report.decade_gamma = cfg.gamma;
  const DegenerateSlopeSet d2 = degenerate_slopes(set, 2.0);
  report.alpha_degenerate = d2.contains_slope(alpha.to_double(), cfg.degenerate_tol);
  if (report.alpha_degenerate && (cfg.regime == Regime::kB || cfg.regime == Regime::kD)) {
    report.warnings.push_back("degenerate-direction-warning: regime " + to_string(cfg.regime) +
                              " assumes alpha outside D_2(E), but alpha " + alpha.digest() +
                              " matches a degenerate boundary direction");
  }
  const std::vector<double> grid = geometric_grid(cfg.grid);
  report.curve = error_curve(set, cfg.start, alpha, grid, set_area);
  for (int i = 0; i <= 10; ++i)
    report.gammas.push_back(sup_statistic(report.curve, 0.5 + 0.1 * i));
  report.decades = decade_sups(report.curve, cfg.gamma);

  const double expo = hypothesis_exponent(cfg.regime, report.alpha_degenerate, cfg.sigma);
  const GammaStat at_gamma = sup_statistic(report.curve, cfg.gamma);
  std::string trend = "no decade trend (fewer than two decades)";
  if (report.decades.size() >= 2) {
    const double last = report.decades.back().sup;
    const double prev = report.decades[report.decades.size() - 2].sup;
    trend = last <= prev ? "last decade sup not above the previous one"
                         : "last decade sup above the previous one";
  }
  report.verdict = "regime " + to_string(cfg.regime) + " (log exponent " + number_text(expo) +
                   "): sup |Delta|/log(T)^" + number_text(cfg.gamma) + " = " +
                   number_text(at_gamma.sup) + " at T = " + number_text(at_gamma.at_t) + "; " +
                   trend;
  return report;
}

LiouvilleReport run_liouville_demo(const Slope& alpha, Interval rect_x, Interval rect_y,
                                   double t_max, double grid_ratio, Point start,
                                   double exponent) {
  require(t_max > 1.0, "Liouville scan needs t_max > 1");
  const SetExpr rect = SetExpr::primitive(make_rectangle(rect_x.lo, rect_x.hi, rect_y.lo, rect_y.hi));
  rect.validate();
  LiouvilleReport report;
  report.convergents.assign(alpha.convergents().begin(), alpha.convergents().end());
  report.threshold_exponent = exponent;
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double t = std::pow(grid_ratio, k);
    if (t >= t_max) break;
    grid.push_back(t);
  }
  grid.push_back(t_max);
  report.curve = error_curve(rect, start, alpha, grid, area(rect));
  for (const ErrorPoint& p : report.curve.points) {
    const double ratio = std::abs(p.delta) / std::pow(p.t, exponent);
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.max_ratio_t = p.t;
    }
    if (!report.witness_found && ratio > 1.0) {
      report.witness_found = true;
      report.witness_t = p.t;
      report.witness_delta = p.delta;
    }
  }
  return report;
}

LiouvilleReport run_liouville_demo(std::vector<BigInt> digits, Interval rect_x, Interval rect_y,
                                   double t_max, double grid_ratio, Point start,
                                   double exponent) {
  require(digits.size() >= 2, "Liouville demo needs at least two partial quotients");
  const std::vector<Convergent> conv = convergents_of(digits);
  bool large = false;
  // q_i = 1 makes the condition vacuous, so those indices do not count.
  for (std::size_t i = 0; i + 1 < digits.size(); ++i)
    if (conv[i].q >= 2 && digits[i + 1] >= conv[i].q * conv[i].q) large = true;
  require(large, "Liouville demo needs some a_(i+1) >= q_i^2 with q_i >= 2");
  return run_liouville_demo(Slope::from_partial_quotients(std::move(digits)), rect_x, rect_y,
                            t_max, grid_ratio, start, exponent);
}

DiscrepancyScalingReport run_discrepancy_scaling(const Slope& alpha, int log2_min, int log2_max,
                                                 double p, double shift) {
  require(log2_min >= 1 && log2_min <= log2_max && log2_max <= 20,
          "dyadic range must satisfy 1 <= min <= max <= 20");
  require(p >= 1.0, "p must be at least 1");
  const long n_max = 1L << log2_max;
  const PointSet1D full = kronecker_points(alpha, shift, n_max);
  DiscrepancyScalingReport report;
  report.p = p;
  const double inv_p_prime = std::isinf(p) ? 1.0 : 1.0 - 1.0 / p;
  for (int e = log2_min; e <= log2_max; ++e) {
    const long n = 1L << e;
    std::vector<double> prefix(full.points().begin(), full.points().begin() + n);
    const PointSet1D set(std::move(prefix));
    DiscrepancyRow row;
    row.n = n;
    row.d_inf = star_discrepancy(set).value;
    row.d_p = lp_discrepancy(set, p).value;
    const double logn = std::log(static_cast<double>(n));
    row.scaled_p = n * row.d_p / std::pow(logn, inv_p_prime);
    row.scaled_inf = n * row.d_inf / logn;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace equiflow
