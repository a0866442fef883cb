#include "equiflow/cli.hpp"

#include "equiflow/boundary.hpp"
#include "equiflow/csv.hpp"
#include "equiflow/error.hpp"
#include "equiflow/experiment.hpp"
#include "equiflow/scene.hpp"
#include "equiflow/section.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

namespace equiflow {
namespace {

struct Sink {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = nullptr;
};

Sink open_sink(const std::string& path, std::ostream& fallback) {
  Sink s;
  if (path.empty() || path == "-") {
    s.stream = &fallback;
  } else {
    s.file = std::make_unique<std::ofstream>(path);
    require(s.file->good(), "cannot write " + path);
    s.stream = s.file.get();
  }
  return s;
}

void write_header(CsvWriter& csv, const std::string& digest) {
  csv.comment("config_digest", digest);
  csv.comment("precision_bits", std::to_string(Fixed::default_bits()));
}

void write_curve(std::ostream& out, const ErrorCurve& curve, const std::string& digest) {
  CsvWriter csv(out);
  write_header(csv, digest);
  csv.comment("set", curve.set_digest);
  csv.comment("slope", curve.slope_digest);
  csv.comment("start", format_double(curve.start.x) + " " + format_double(curve.start.y));
  csv.comment("area", format_double(curve.area));
  csv.header({"T", "delta"});
  for (const ErrorPoint& p : curve.points) csv.row({p.t, p.delta});
}

void write_curve_plot(const std::string& path, const ErrorCurve& curve) {
  if (path.empty()) return;
  std::ofstream out(path);
  require(out.good(), "cannot write " + path);
  std::vector<double> t, d;
  for (const ErrorPoint& p : curve.points) {
    t.push_back(p.t);
    d.push_back(p.delta);
  }
  write_plot_data(out, t, d);
}

std::string digits_text(std::span<const BigInt> digits) {
  std::string s = "[";
  for (std::size_t i = 0; i < digits.size(); ++i) {
    s += digits[i].str();
    s += i == 0 ? (digits.size() > 1 ? "; " : "") : (i + 1 < digits.size() ? ", " : "");
  }
  return s + "]";
}

std::string args_digest(const std::vector<std::string>& args, const SetExpr* set) {
  std::string text;
  for (const std::string& a : args) text += a + '\x1f';
  if (set) text += set->canonical();
  return fnv1a_hex(text);
}

Slope config_slope(const ExperimentConfig& cfg) {
  if (!cfg.digits.empty()) return Slope::from_partial_quotients(cfg.digits);
  return Slope::parse(cfg.slope);
}

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  in >> v;
  require(!in.fail() && in.eof(), "p must be a number or inf");
  return v;
}

void print_scaling(std::ostream& out, const ScalingReport& r) {
  out << "gamma,sup,at_T\n";
  for (const GammaStat& g : r.gammas)
    out << format_double(g.gamma) << ',' << format_double(g.sup) << ',' << format_double(g.at_t)
        << '\n';
  out << "decade_lo,decade_hi,points,sup_gamma_" << format_double(r.decade_gamma) << '\n';
  for (const DecadeStat& d : r.decades)
    out << format_double(d.t_lo) << ',' << format_double(d.t_hi) << ',' << d.points << ','
        << format_double(d.sup) << '\n';
  out << "alpha_degenerate=" << (r.alpha_degenerate ? "true" : "false") << '\n';
  out << "verdict=" << r.verdict << '\n';
}

void print_liouville(std::ostream& out, const LiouvilleReport& r) {
  out << "convergents:";
  for (const Convergent& c : r.convergents) out << ' ' << c.p.str() << '/' << c.q.str();
  out << '\n';
  out << "threshold_exponent=" << format_double(r.threshold_exponent) << '\n';
  out << "max_ratio=" << format_double(r.max_ratio) << " at T=" << format_double(r.max_ratio_t)
      << '\n';
  if (r.witness_found) {
    out << "witness T=" << format_double(r.witness_t) << " delta=" << format_double(r.witness_delta)
        << '\n';
  } else {
    out << "no witness\n";
  }
}

void write_discrepancy(std::ostream& out, const DiscrepancyScalingReport& r,
                       const std::string& digest) {
  CsvWriter csv(out);
  write_header(csv, digest);
  csv.comment("p", format_double(r.p));
  csv.header({"N", "D_inf", "D_p", "N_D_p_over_log_pow", "N_D_inf_over_log"});
  for (const DiscrepancyRow& row : r.rows)
    csv.row({static_cast<double>(row.n), row.d_inf, row.d_p, row.scaled_p, row.scaled_inf});
}

int run_config(const std::string& path, std::ostream& out, std::ostream& err) {
  const ExperimentConfig cfg = load_config(path);
  const std::string digest = config_digest(cfg);
  if (cfg.experiment == "error-scaling") {
    const ScalingReport r = run_error_scaling(cfg);
    for (const std::string& w : r.warnings) err << "warning: " << w << '\n';
    Sink sink = open_sink(cfg.csv_path, out);
    write_curve(*sink.stream, r.curve, digest);
    write_curve_plot(cfg.plot_path, r.curve);
    print_scaling(cfg.csv_path.empty() ? err : out, r);
  } else if (cfg.experiment == "liouville") {
    require(cfg.grid.t_max > 1.0, "liouville config needs t_max");
    const LiouvilleReport r =
        run_liouville_demo(cfg.digits, cfg.rect_x, cfg.rect_y, cfg.grid.t_max, cfg.grid.ratio,
                           cfg.start, cfg.threshold_exponent);
    Sink sink = open_sink(cfg.csv_path, out);
    write_curve(*sink.stream, r.curve, digest);
    write_curve_plot(cfg.plot_path, r.curve);
    print_liouville(cfg.csv_path.empty() ? err : out, r);
  } else {
    const DiscrepancyScalingReport r =
        run_discrepancy_scaling(config_slope(cfg), cfg.log2_min, cfg.log2_max, cfg.p, cfg.shift);
    Sink sink = open_sink(cfg.csv_path, out);
    write_discrepancy(*sink.stream, r, digest);
  }
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Occupation times and discrepancy of linear flows on the torus", "equiflow"};
  app.require_subcommand(0, 1);
  std::string config;
  app.add_option("--config", config, "Run the experiment described by a JSON config");

  std::string scene, alpha = "golden", output, plot;

  auto* area_cmd = app.add_subcommand("area", "Area of a scene");
  double area_tol = 1e-9;
  area_cmd->add_option("--scene", scene, "Scene JSON")->required();
  area_cmd->add_option("--tol", area_tol, "Quadrature tolerance");

  auto* tau_cmd = app.add_subcommand("tau", "Sample the section function to CSV");
  int tau_n = 1024;
  tau_cmd->add_option("--scene", scene, "Scene JSON")->required();
  tau_cmd->add_option("--alpha", alpha, "Slope");
  tau_cmd->add_option("--n", tau_n, "Samples at h = i/n");
  tau_cmd->add_option("--output", output, "CSV path (default stdout)");
  tau_cmd->add_option("--plot", plot, "Plot-data path");

  auto* flow_cmd = app.add_subcommand("flow-error", "Error term on a geometric T grid");
  double tmax = 1e4, t0 = 10.0, ratio = 1.5, x1 = 0.0, x2 = 0.0;
  flow_cmd->add_option("--scene", scene, "Scene JSON")->required();
  flow_cmd->add_option("--alpha", alpha, "Slope");
  flow_cmd->add_option("--tmax", tmax, "Largest T");
  flow_cmd->add_option("--t0", t0, "First T");
  flow_cmd->add_option("--grid-ratio", ratio, "Grid ratio");
  flow_cmd->add_option("--x", x1, "Start x");
  flow_cmd->add_option("--y", x2, "Start y");
  flow_cmd->add_option("--output", output, "CSV path (default stdout)");
  flow_cmd->add_option("--plot", plot, "Plot-data path");

  auto* disc_cmd = app.add_subcommand("discrepancy", "Dyadic discrepancy table of {k alpha}");
  int log2_min = 6, log2_max = 20;
  std::string p_text = "2";
  double shift = 0.0;
  disc_cmd->add_option("--alpha", alpha, "Slope");
  disc_cmd->add_option("--log2-min", log2_min, "Smallest log2 N");
  disc_cmd->add_option("--log2-max", log2_max, "Largest log2 N");
  disc_cmd->add_option("--p", p_text, "Exponent, or inf");
  disc_cmd->add_option("--shift", shift, "Shift x0");
  disc_cmd->add_option("--output", output, "CSV path (default stdout)");

  auto* cf_cmd = app.add_subcommand("cf", "Continued fraction digits and convergents");
  std::string value;
  int depth = 10;
  cf_cmd->add_option("--value", value, "Slope")->required();
  cf_cmd->add_option("--depth", depth, "Number of digits after a0");

  auto* deg_cmd = app.add_subcommand("degenerate", "Degenerate boundary directions");
  double sigma = 2.0;
  deg_cmd->add_option("--scene", scene, "Scene JSON")->required();
  deg_cmd->add_option("--sigma", sigma, "Exponent sigma >= 2");

  auto* liou_cmd = app.add_subcommand("demo-liouville", "Search for a large error witness");
  std::string digits = "[0; 2, 10000, 2, 100000000]";
  std::vector<double> rect_x{0.2, 0.8}, rect_y{0.3, 0.33};
  double liou_tmax = 1e6, liou_ratio = 1.005, exponent = 0.4;
  liou_cmd->add_option("--digits", digits, "Partial quotients [a0; a1, ...]");
  liou_cmd->add_option("--rect-x", rect_x, "Rectangle x range")->expected(2);
  liou_cmd->add_option("--rect-y", rect_y, "Rectangle y range")->expected(2);
  liou_cmd->add_option("--tmax", liou_tmax, "Largest T");
  liou_cmd->add_option("--grid-ratio", liou_ratio, "Grid ratio");
  liou_cmd->add_option("--exponent", exponent, "Threshold exponent");
  liou_cmd->add_option("--x", x1, "Start x");
  liou_cmd->add_option("--y", x2, "Start y");
  liou_cmd->add_option("--output", output, "CSV path");
  liou_cmd->add_option("--plot", plot, "Plot-data path");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (!config.empty()) return run_config(config, out, err);

    if (area_cmd->parsed()) {
      AreaOptions opts;
      opts.tol = area_tol;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12f", area(load_scene(scene), opts));
      out << buf << '\n';
    } else if (tau_cmd->parsed()) {
      const SetExpr set = load_scene(scene);
      const TauSamples s = tau_samples(set, Slope::parse(alpha), tau_n);
      Sink sink = open_sink(output, out);
      CsvWriter csv(*sink.stream);
      write_header(csv, args_digest(args, &set));
      csv.header({"h", "tau"});
      for (std::size_t i = 0; i < s.grid.size(); ++i) csv.row({s.grid[i], s.values[i]});
      if (!plot.empty()) {
        std::ofstream p(plot);
        require(p.good(), "cannot write " + plot);
        write_plot_data(p, s.grid, s.values);
      }
    } else if (flow_cmd->parsed()) {
      const SetExpr set = load_scene(scene);
      GridSpec spec;
      spec.t0 = t0;
      spec.ratio = ratio;
      spec.t_max = tmax;
      const std::vector<double> grid = geometric_grid(spec);
      const ErrorCurve curve = error_curve(set, {x1, x2}, Slope::parse(alpha), grid);
      Sink sink = open_sink(output, out);
      write_curve(*sink.stream, curve, args_digest(args, &set));
      write_curve_plot(plot, curve);
    } else if (disc_cmd->parsed()) {
      const DiscrepancyScalingReport r =
          run_discrepancy_scaling(Slope::parse(alpha), log2_min, log2_max, parse_p(p_text), shift);
      Sink sink = open_sink(output, out);
      write_discrepancy(*sink.stream, r, args_digest(args, nullptr));
    } else if (cf_cmd->parsed()) {
      require(depth >= 0, "depth must be nonnegative");
      const Slope s = Slope::parse(value);
      std::vector<BigInt> d(s.partial_quotients().begin(), s.partial_quotients().end());
      // Digit lists and integer ratios are complete expansions already.
      const bool finite = value.find('[') != std::string::npos || value.find('/') != std::string::npos;
      if (!finite && d.size() < static_cast<std::size_t>(depth) + 1) {
        const std::vector<BigInt> more = continued_fraction(s.value(), depth);
        if (more.size() > d.size()) d = more;
      }
      if (d.size() > static_cast<std::size_t>(depth) + 1) d.resize(static_cast<std::size_t>(depth) + 1);
      out << digits_text(d) << '\n';
      for (const Convergent& c : convergents_of(d)) out << c.p.str() << '/' << c.q.str() << '\n';
    } else if (deg_cmd->parsed()) {
      const SetExpr set = load_scene(scene);
      const DegenerateSlopeSet ds = degenerate_slopes(set, sigma);
      out << "angle,slope,piece,order\n";
      for (const DegenerateDirection& d : ds.directions) {
        const double c = std::cos(d.angle);
        const double slope = std::abs(c) < 1e-15 ? std::numeric_limits<double>::infinity()
                                                 : std::sin(d.angle) / c;
        out << format_double(d.angle) << ',' << format_double(slope) << ',' << d.piece << ','
            << format_double(d.order) << '\n';
      }
    } else if (liou_cmd->parsed()) {
      const Slope s = Slope::parse(digits);
      std::vector<BigInt> d(s.partial_quotients().begin(), s.partial_quotients().end());
      const LiouvilleReport r = run_liouville_demo(d, {rect_x[0], rect_x[1]}, {rect_y[0], rect_y[1]},
                                                   liou_tmax, liou_ratio, {x1, x2}, exponent);
      if (!output.empty()) {
        Sink sink = open_sink(output, out);
        write_curve(*sink.stream, r.curve, args_digest(args, nullptr));
      }
      write_curve_plot(plot, r.curve);
      print_liouville(out, r);
    } else {
      out << app.help();
      return 1;
    }
  } catch (const Error& e) {
    err << "equiflow: " << e.what() << '\n';
    return e.is_numerical_budget() ? 2 : 1;
  } catch (const std::exception& e) {
    err << "equiflow: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace equiflow
