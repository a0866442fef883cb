#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "equiflow/cli.hpp"
#include "equiflow/error.hpp"
#include "equiflow/experiment.hpp"
#include "equiflow/scene.hpp"

#include <sstream>

using namespace equiflow;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

ExperimentConfig disc_config() {
  return parse_config(nlohmann::json::parse(R"({
    "experiment": "error-scaling",
    "scene": "scenes/disc.json",
    "slope": "golden",
    "grid": {"t0": 10, "ratio": 1.001, "t_max": 100000},
    "regime": "B"
  })"),
                      EQUIFLOW_SOURCE_DIR);
}

std::vector<std::string> data_rows(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

}  // namespace

TEST_CASE("geometric grids") {
  GridSpec g;
  g.t0 = 10;
  g.ratio = 2;
  g.count = 5;
  const auto v = geometric_grid(g);
  REQUIRE(v.size() == 5);
  CHECK(v.back() == 160.0);
  g.count = 0;
  g.t_max = 100;
  CHECK(geometric_grid(g).size() == 4);
  g.count = 20000;
  CHECK_THROWS_AS(geometric_grid(g), Error);
  g.count = 3;
  g.ratio = 1.0;
  CHECK_THROWS_AS(geometric_grid(g), Error);
}

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = load_config(EQUIFLOW_SOURCE_DIR "/configs/error_scaling_disc.json");
  CHECK(cfg.experiment == "error-scaling");
  CHECK(cfg.set.has_value());
  CHECK(cfg.regime == Regime::kB);
  CHECK(config_digest(cfg) == config_digest(load_config(EQUIFLOW_SOURCE_DIR "/configs/error_scaling_disc.json")));
  const ExperimentConfig lv = load_config(EQUIFLOW_SOURCE_DIR "/configs/liouville.json");
  CHECK(lv.digits.size() == 5);
  CHECK(lv.digits[4] == BigInt(100000000));
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"experiment": "nope"})"), "."), Error);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"experiment": "error-scaling"})"), "."), Error);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"experiment": "error-scaling", "scene": "scenes/disc.json", "regime": "E"})"), EQUIFLOW_SOURCE_DIR), Error);
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("disc scaling report") {
  const ScalingReport r = run_error_scaling(disc_config());
  CHECK_FALSE(r.alpha_degenerate);
  CHECK(r.warnings.empty());
  REQUIRE(r.gammas.size() == 11);
  for (const auto& g : r.gammas) CHECK(g.sup >= 0.0);
  CHECK(r.gammas[1].gamma == doctest::Approx(0.6));
  // Frozen from the first verified run.
  CHECK(r.gammas[1].sup == doctest::Approx(0.091912).epsilon(1e-4));
  int covered = 0;
  for (const auto& d : r.decades) covered += d.points;
  CHECK(covered == static_cast<int>(r.curve.points.size()));
  REQUIRE(r.decades.size() == 5);
  CHECK(r.decades.back().sup <= r.decades[3].sup);
  CHECK(r.decades[3].sup <= r.decades[2].sup);
}

TEST_CASE("full square has zero error") {
  ExperimentConfig cfg = disc_config();
  cfg.set = SetExpr::unit_square();
  cfg.grid.ratio = 1.5;
  const ScalingReport r = run_error_scaling(cfg);
  for (const auto& g : r.gammas) CHECK(g.sup <= 1e-9);
  const LiouvilleReport lv = run_liouville_demo(std::vector<BigInt>{0, 2, 10000, 2, 100000000},
                                                {0, 1}, {0, 1}, 1e4, 1.05);
  CHECK_FALSE(lv.witness_found);
  CHECK(lv.max_ratio <= 1e-9);
}

TEST_CASE("edge parallel to the flow raises the degenerate warning") {
  ExperimentConfig cfg = disc_config();
  cfg.set = load_scene(EQUIFLOW_SOURCE_DIR "/scenes/aligned_square.json");
  cfg.grid.ratio = 1.5;
  cfg.grid.t_max = 1000;
  for (Regime r : {Regime::kB, Regime::kD}) {
    cfg.regime = r;
    const ScalingReport rep = run_error_scaling(cfg);
    CHECK(rep.alpha_degenerate);
    REQUIRE(rep.warnings.size() == 1);
    CHECK(rep.warnings[0].find("degenerate-direction-warning") == 0);
  }
  cfg.regime = Regime::kA;
  CHECK(run_error_scaling(cfg).warnings.empty());
}

TEST_CASE("Liouville demo") {
  const LiouvilleReport r = run_liouville_demo(std::vector<BigInt>{0, 2, 10000, 2, 100000000},
                                               {0.2, 0.8}, {0.3, 0.33}, 1e6);
  CHECK(r.witness_found);
  // Frozen witness from the first verified run.
  CHECK(r.witness_t == doctest::Approx(1598.1051015198068).epsilon(1e-12));
  CHECK(r.witness_t <= 1e6);
  CHECK(std::abs(r.witness_delta) > std::pow(r.witness_t, 0.4));
  CHECK_THROWS_AS(run_liouville_demo(std::vector<BigInt>{0, 1, 1, 1}, {0.4, 0.6}, {0.4, 0.6}, 100.0), Error);
}

TEST_CASE("discrepancy scaling table") {
  const auto r = run_discrepancy_scaling(Slope::golden(), 6, 12, 2.0);
  REQUIRE(r.rows.size() == 7);
  for (const auto& row : r.rows) CHECK(row.d_p <= row.d_inf + 1e-15);
  const auto third = run_discrepancy_scaling(Slope::parse("1/3"), 6, 10, 2.0);
  for (const auto& row : third.rows) CHECK(row.d_inf >= 1.0 / 6.0);
  CHECK_THROWS_AS(run_discrepancy_scaling(Slope::golden(), 6, 21, 2.0), Error);
}

TEST_CASE("command line") {
  const std::string disc = EQUIFLOW_SOURCE_DIR "/scenes/disc.json";
  CHECK(cli({"area", "--scene", disc}).out == "0.196349540849\n");
  const Run cf = cli({"cf", "--value", "invphi", "--depth", "10"});
  CHECK(cf.code == 0);
  CHECK(cf.out.rfind("[0; 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]\n0/1\n1/1\n1/2\n", 0) == 0);
  CHECK(cli({"cf", "--value", "golden", "--depth", "10"}).out.rfind("[1; 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]\n", 0) == 0);

  const Run fe = cli({"flow-error", "--scene", disc, "--alpha", "golden", "--tmax", "1e4", "--grid-ratio", "1.5"});
  CHECK(fe.code == 0);
  GridSpec g;
  g.t0 = 10;
  g.ratio = 1.5;
  g.t_max = 1e4;
  CHECK(data_rows(fe.out).size() == geometric_grid(g).size());
  CHECK(fe.out.find("# config_digest=") == 0);
  CHECK(fe.out.find("# precision_bits=") != std::string::npos);
  // Bit-identical on a second run.
  CHECK(cli({"flow-error", "--scene", disc, "--alpha", "golden", "--tmax", "1e4", "--grid-ratio", "1.5"}).out == fe.out);

  CHECK(cli({"area", "--scene", "/nonexistent.json"}).code == 1);
  CHECK(cli({"flow-error", "--scene", disc, "--grid-ratio", "0.5"}).code == 1);
  CHECK(cli({"bogus"}).code == 1);
  const Run budget = cli({"flow-error", "--scene", disc, "--tmax", "1e80", "--t0", "1e79"});
  CHECK(budget.code == 2);
  CHECK(budget.err.find("precision-exhausted") != std::string::npos);
  CHECK(cli({"--help"}).code == 0);
}
