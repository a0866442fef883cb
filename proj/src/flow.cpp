#include "equiflow/flow.hpp"

#include "equiflow/error.hpp"
#include "equiflow/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace equiflow {
namespace {

// Bits kept in reserve beyond the accumulated rounding of the wrap recursions.
constexpr int kReserveBits = 40;

Point unreflect(Point p, bool reflect) { return reflect ? Point{p.x, 1.0 - p.y} : p; }

}  // namespace

void check_flow_budget(const Slope& alpha, double t_max) {
  require(std::isfinite(t_max) && t_max >= 0.0, "flow horizon must be finite and nonnegative");
  const double steps = (1.0 + std::abs(alpha.to_double())) * t_max + 2.0;
  if (std::log2(steps) + kReserveBits > static_cast<double>(alpha.frac_bits()))
    fail(ErrorKind::kPrecisionExhausted,
         "horizon " + std::to_string(t_max) + " needs more than " +
             std::to_string(alpha.frac_bits()) + " fractional bits");
}

FlowWalker::FlowWalker(Point x, const Slope& alpha, double t_max)
    : FlowWalker(Fixed::from_double(x.x, alpha.frac_bits()),
                 Fixed::from_double(x.y, alpha.frac_bits()), alpha, t_max) {}

FlowWalker::FlowWalker(Fixed x1, Fixed x2, const Slope& alpha, double t_max)
    : bits_(alpha.frac_bits()), reflect_(alpha.value().is_negative()), t_max_(t_max) {
  check_flow_budget(alpha, t_max);
  a_ = alpha.value().abs();
  x1_ = x1.with_bits(bits_).frac();
  x2_ = x2.with_bits(bits_).frac();
  if (reflect_) x2_ = (-x2_).frac();
  t_ = Fixed::zero(bits_);
  pos_ = {x1_.to_double(), x2_.to_double()};
  const Fixed one = Fixed::from_integer(1, bits_);
  tx_ = one - x1_;
  y_at_tx_ = (x2_ + a_.mul(tx_)).frac();
  if (!a_.is_zero()) {
    inv_a_ = a_.reciprocal();
    ty_ = (one - x2_).mul(inv_a_);
    x_at_ty_ = (x1_ + ty_).frac();
  }
  corner_tol_ = Fixed(BigInt(1) << 32, bits_);
}

bool FlowWalker::next(TrajectorySegment& out, double limit) {
  return next(out, Fixed::from_double(limit, bits_));
}

bool FlowWalker::next(TrajectorySegment& out, const Fixed& limit) {
  if (t_ >= limit) return false;
  enum class Event { kX, kY, kCorner, kLimit } event = Event::kX;
  const Fixed* when = &tx_;
  if (!a_.is_zero()) {
    if ((tx_ - ty_).abs() <= corner_tol_) {
      event = Event::kCorner;
    } else if (ty_ < tx_) {
      event = Event::kY;
      when = &ty_;
    }
  }
  if (limit < *when) event = Event::kLimit;

  const Point start = pos_;
  Point end;
  Fixed t_new;
  switch (event) {
    case Event::kX:
      end = {1.0, y_at_tx_.to_double()};
      t_new = tx_;
      pos_ = {0.0, end.y};
      tx_.add_integer(1);
      y_at_tx_ = (y_at_tx_ + a_).frac();
      break;
    case Event::kY:
      end = {x_at_ty_.to_double(), 1.0};
      t_new = ty_;
      pos_ = {end.x, 0.0};
      ty_ += inv_a_;
      x_at_ty_ = (x_at_ty_ + inv_a_).frac();
      break;
    case Event::kCorner:
      end = {1.0, 1.0};
      t_new = tx_;
      pos_ = {0.0, 0.0};
      tx_.add_integer(1);
      y_at_tx_ = (y_at_tx_ + a_).frac();
      ty_ += inv_a_;
      x_at_ty_ = (x_at_ty_ + inv_a_).frac();
      break;
    case Event::kLimit: {
      t_new = limit.with_bits(bits_);
      const double dt = (t_new - t_).to_double();
      end = {std::min(1.0, start.x + dt), std::min(1.0, start.y + a_.to_double() * dt)};
      pos_ = end;
      break;
    }
  }
  out.seg = {unreflect(start, reflect_), unreflect(end, reflect_)};
  out.t_begin = t_.to_double();
  out.duration = (t_new - t_).to_double();
  t_ = std::move(t_new);
  return true;
}

Point FlowWalker::position() const {
  Point p = unreflect(pos_, reflect_);
  if (p.x >= 1.0) p.x -= 1.0;
  if (p.y >= 1.0) p.y -= 1.0;
  return p;
}

Trajectory decompose(Point x, const Slope& alpha, double t) {
  require(t > 0.0, "trajectory duration must be positive");
  Trajectory traj{x, alpha.to_double(), t, {}};
  FlowWalker walker(x, alpha, t);
  const Fixed limit = Fixed::from_double(t, alpha.frac_bits());
  TrajectorySegment seg;
  while (walker.next(seg, limit)) traj.segments.push_back(seg);
  return traj;
}

Point flow_position(Point x, const Slope& alpha, double t) {
  const unsigned bits = alpha.frac_bits();
  const Fixed tt = Fixed::from_double(t, bits);
  const Fixed px = (Fixed::from_double(x.x, bits) + tt).frac();
  const Fixed py = (Fixed::from_double(x.y, bits) + alpha.value().mul(tt)).frac();
  return {px.to_double(), py.to_double()};
}

double occupation_time(const SetExpr& set, Point x, const Slope& alpha, double t) {
  require(t >= 0.0, "occupation horizon must be nonnegative");
  FlowWalker walker(x, alpha, t);
  const Fixed limit = Fixed::from_double(t, alpha.frac_bits());
  CompensatedSum sum;
  TrajectorySegment seg;
  while (walker.next(seg, limit)) sum.add(seg.duration * clipped_fraction(set, seg.seg));
  return sum.value();
}

double error_term(const SetExpr& set, Point x, const Slope& alpha, double t, double set_area) {
  return occupation_time(set, x, alpha, t) - t * set_area;
}

double error_term(const SetExpr& set, Point x, const Slope& alpha, double t) {
  return error_term(set, x, alpha, t, area(set));
}

ErrorCurve error_curve(const SetExpr& set, Point x, const Slope& alpha,
                       std::span<const double> grid, double set_area) {
  require(!grid.empty(), "time grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require(std::isfinite(grid[i]) && grid[i] > 0.0, "grid times must be positive");
    require(i == 0 || grid[i] > grid[i - 1], "grid times must be strictly increasing");
  }
  ErrorCurve curve;
  curve.area = set_area;
  curve.set_digest = set.canonical();
  curve.slope_digest = alpha.digest();
  curve.start = x;
  curve.points.reserve(grid.size());
  FlowWalker walker(x, alpha, grid.back());
  CompensatedSum sum;
  TrajectorySegment seg;
  for (double t : grid) {
    const Fixed limit = Fixed::from_double(t, alpha.frac_bits());
    while (walker.next(seg, limit)) sum.add(seg.duration * clipped_fraction(set, seg.seg));
    curve.points.push_back({t, sum.value() - t * set_area});
  }
  return curve;
}

ErrorCurve error_curve(const SetExpr& set, Point x, const Slope& alpha,
                       std::span<const double> grid) {
  return error_curve(set, x, alpha, grid, area(set));
}

WeightedResult weighted_occupation(const Density& f, Point x, const Slope& alpha, double t,
                                   double tol) {
  require(t > 0.0, "weighted occupation horizon must be positive");
  require(tol > 0.0 && tol <= 1e-4, "weighted occupation tolerance must be in (0, 1e-4]");
  FlowWalker walker(x, alpha, t);
  const Fixed limit = Fixed::from_double(t, alpha.frac_bits());
  CompensatedSum sum;
  double error = 0.0;
  TrajectorySegment seg;
  const double local_tol = std::max(tol / t, 1e-15);
  while (walker.next(seg, limit)) {
    if (seg.duration <= 0.0) continue;
    const Segment s = seg.seg;
    auto along = [&](double u) {
      const Point p = s.at(u);
      return f(p.x, p.y);
    };
    const QuadratureResult q = integrate_adaptive(along, 0.0, 1.0, local_tol, 4096);
    sum.add(seg.duration * q.value);
    error += seg.duration * q.error;
  }
  return {sum.value(), error};
}

}  // namespace equiflow
