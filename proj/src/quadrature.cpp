#include "equiflow/quadrature.hpp"

#include "equiflow/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

namespace equiflow {
namespace {

GaussLegendreRule build_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

struct Panel {
  double a, b, whole, refined, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

const GaussLegendreRule& gauss_legendre(int n) {
  require(n >= 1 && n <= 64, "Gauss-Legendre order must be in [1, 64]");
  static std::mutex mu;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double gauss_legendre_apply(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussLegendreRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return sum * half;
}

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol, int max_intervals,
                                    std::span<const double> breakpoints) {
  require(b >= a, "integration bounds reversed");
  require(tol > 0.0, "quadrature tolerance must be positive");
  QuadratureResult result;
  if (b == a) return result;

  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  constexpr int kOrder = 10;
  auto score = [&](double lo, double hi, double whole) {
    const double mid = 0.5 * (lo + hi);
    const double refined =
        gauss_legendre_apply(f, lo, mid, kOrder) + gauss_legendre_apply(f, mid, hi, kOrder);
    return Panel{lo, hi, whole, refined, std::abs(whole - refined)};
  };

  std::priority_queue<Panel> heap;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = score(cuts[i], cuts[i + 1], gauss_legendre_apply(f, cuts[i], cuts[i + 1], kOrder));
    total_error += p.error;
    heap.push(p);
  }
  int panels = static_cast<int>(heap.size());
  while (total_error > tol) {
    if (panels >= max_intervals)
      fail(ErrorKind::kNonconvergentQuadrature,
           "error estimate " + std::to_string(total_error) + " above tolerance " +
               std::to_string(tol) + " after " + std::to_string(panels) + " panels");
    Panel worst = heap.top();
    heap.pop();
    total_error -= worst.error;
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel can no longer be split in double precision; accept it.
      worst.error = 0.0;
      heap.push(worst);
      continue;
    }
    const double left_whole = gauss_legendre_apply(f, worst.a, mid, kOrder);
    const double right_whole = worst.refined - left_whole;
    Panel left = score(worst.a, mid, left_whole);
    Panel right = score(mid, worst.b, right_whole);
    total_error += left.error + right.error;
    heap.push(left);
    heap.push(right);
    ++panels;
    // Recompute occasionally to shed drift from the running subtraction.
    if (panels % 1024 == 0) {
      std::vector<Panel> all;
      total_error = 0.0;
      while (!heap.empty()) {
        total_error += heap.top().error;
        all.push_back(heap.top());
        heap.pop();
      }
      for (const Panel& p : all) heap.push(p);
    }
  }

  CompensatedSum sum;
  std::vector<Panel> all;
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : all) sum.add(p.refined);
  result.value = sum.value();
  result.error = total_error;
  result.intervals = panels;
  return result;
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

}  // namespace equiflow
