#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "equiflow/error.hpp"
#include "equiflow/section.hpp"

#include "oracles.hpp"
#include "random_scenes.hpp"

#include <numbers>

using namespace equiflow;

namespace {

const SetExpr kDisc = SetExpr::primitive(Disc{{0.5, 0.5}, 0.25});
const SetExpr kUpper = SetExpr::primitive(make_rectangle(0.0, 1.0, 0.5, 1.0));
const Slope kZero = Slope::from_value(Fixed::zero(256));

}  // namespace

TEST_CASE("closed-form sections for flat flow") {
  const SetExpr parabola = SetExpr::primitive(PowerGraph{1.0, 2.0});
  const SetExpr wedge = SetExpr::primitive(PowerGraph{0.5, 1.0});
  for (int i = 1; i < 1000; ++i) {
    const double h = i / 1000.0;
    CHECK(std::abs(tau(parabola, kZero, h) - std::sqrt(h)) <= 1e-10);
    CHECK(std::abs(tau(wedge, kZero, h) - std::min(1.0, 2.0 * h)) <= 1e-10);
    if (std::abs(h - 0.5) > 1e-9) CHECK(tau(kUpper, kZero, h) == (h > 0.5 ? 1.0 : 0.0));
  }
  // Finite differences on the linear part equal 1/m = 2.
  const TauSamples s = tau_samples(wedge, kZero, 1000);
  for (int i = 10; i < 490; ++i)
    CHECK((s.values[i + 1] - s.values[i]) / s.spacing == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("trivial sections") {
  const TauSamples full = tau_samples(SetExpr::unit_square(), kZero, 8);
  for (double v : full.values) CHECK(v == doctest::Approx(1.0));
  const TauSamples none = tau_samples(SetExpr::empty(), Slope::golden(), 8);
  for (double v : none.values) CHECK(v == 0.0);
}

TEST_CASE("section bounds and complement identity") {
  std::mt19937_64 rng(31);
  for (int s = 0; s < 30; ++s) {
    const SetExpr e = testing_support::random_scene(rng);
    const SetExpr ec = SetExpr::complement(e);
    const Slope a = Slope::parse(s % 3 == 0 ? "golden" : s % 3 == 1 ? "sqrt2" : "-0.3");
    for (int i = 0; i < 50; ++i) {
      const double h = testing_support::uniform(rng, 0, 1);
      const double t = tau(e, a, h);
      CHECK(t >= 0.0);
      CHECK(t <= std::sqrt(1 + a.to_double() * a.to_double()));
      CHECK(std::abs(t + tau(ec, a, h) - tau(SetExpr::unit_square(), a, h)) <= 1e-10);
    }
  }
}

TEST_CASE("Fubini") {
  CHECK(std::abs(fubini_check(kDisc, Slope::sqrt2(), 1024).difference) <= 1e-3);
  const FubiniReport half = fubini_check(kUpper, kZero, 1000);
  CHECK(half.area == doctest::Approx(0.5));
  CHECK(std::abs(half.mean - 0.5) <= 1e-3);
  CHECK(std::abs(fubini_check(kDisc, Slope::golden(), 1 << 14).difference) <= 1e-4);
  const FubiniReport para = fubini_check(SetExpr::primitive(PowerGraph{1.0, 2.0}), kZero, 1 << 14);
  CHECK(std::abs(para.mean - 2.0 / 3.0) <= 1e-4);
}

TEST_CASE("discretization identity") {
  auto both = [](const SetExpr& e, const Slope& a, double x0, long n) {
    return discretization_identity(e, a, x0, n);
  };
  const auto full = both(SetExpr::unit_square(), Slope::golden(), 0.3, 500);
  CHECK(full.continuous == doctest::Approx(500.0));
  CHECK(full.discrete == doctest::Approx(500.0));
  const auto flat = both(kUpper, kZero, 0.75, 500);
  CHECK(flat.continuous == doctest::Approx(500.0));
  CHECK(flat.discrete == doctest::Approx(500.0));

  std::mt19937_64 rng(12);
  const auto d = both(testing_support::random_disc(rng), Slope::sqrt2(), 0.1, 1000);
  CHECK(std::abs(d.continuous - d.discrete) <= 1e-6);

  for (int i = 0; i < 10; ++i) {
    const SetExpr e = testing_support::random_scene(rng);
    const long n = 1 + static_cast<long>(rng() % 1000);
    const double x0 = testing_support::uniform(rng, 0, 1);
    const auto r = both(e, i % 2 ? Slope::golden() : Slope::pi_minus_3(), x0, n);
    CHECK(std::abs(r.continuous - r.discrete) <= 1e-9 * n);
  }
}

TEST_CASE("Sobolev regime detection") {
  CHECK(sobolev_seminorm(kUpper, kZero, 1.5, 8).verdict == Verdict::kDivergent);
  CHECK(sobolev_seminorm(kDisc, Slope::golden(), 1.5, 8).verdict == Verdict::kConvergent);
  CHECK(sobolev_seminorm(kDisc, Slope::golden(), 3.0, 8).verdict == Verdict::kDivergent);
  const SobolevReport r = sobolev_seminorm(kDisc, Slope::golden(), 1.5, 6);
  REQUIRE(r.levels.size() == 6);
  for (std::size_t i = 1; i < r.levels.size(); ++i) CHECK(r.levels[i].dh < r.levels[i - 1].dh);
}

TEST_CASE("weighted sections") {
  auto one = [](double, double) { return 1.0; };
  CHECK(tau_density(one, Slope::golden(), 0.3, 1e-10) == doctest::Approx(1.0));
  auto s2 = [](double, double y) { return std::pow(std::sin(std::numbers::pi * y), 2); };
  for (double h : {0.1, 0.37, 0.8})
    CHECK(tau_density(s2, kZero, h, 1e-10) == doctest::Approx(std::pow(std::sin(std::numbers::pi * h), 2)));
  auto wave = [](double x, double y) {
    return 1.0 + std::cos(2 * std::numbers::pi * x) * std::cos(2 * std::numbers::pi * y);
  };
  const double oracle_value = oracle::riemann_integral(wave, 0, 0, 1.0L, 1.0, 1e-7);
  CHECK(std::abs(tau_density(wave, Slope::parse("1"), 0.0, 1e-10) - oracle_value) <= 1e-9);
}
