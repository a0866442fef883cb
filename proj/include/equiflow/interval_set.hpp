#pragma once

#include <span>
#include <vector>

namespace equiflow {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

/// Finite disjoint union of intervals inside a host interval [a, b], kept
/// sorted. Intervals of zero length are dropped by every operation; the sets
/// only ever feed integrals, so boundary conventions carry no weight.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(Interval host) : host_(host) {}
  IntervalSet(Interval host, Interval single);

  static IntervalSet full(Interval host) { return IntervalSet(host, host); }

  Interval host() const { return host_; }
  std::span<const Interval> intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  double measure() const;

  IntervalSet complement() const;
  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet subtract(const IntervalSet& other) const { return intersect(other.complement()); }

  /// Image under t -> 1 - t when the host is [0, 1].
  IntervalSet reversed() const;

  bool contains(double t) const;

 private:
  void push(Interval iv);

  Interval host_{0.0, 1.0};
  std::vector<Interval> parts_;
};

}  // namespace equiflow
