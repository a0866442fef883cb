#include "equiflow/interval_set.hpp"

#include <algorithm>

namespace equiflow {

IntervalSet::IntervalSet(Interval host, Interval single) : host_(host) {
  push({std::max(single.lo, host.lo), std::min(single.hi, host.hi)});
}

void IntervalSet::push(Interval iv) {
  if (!(iv.hi > iv.lo)) return;
  if (!parts_.empty() && iv.lo <= parts_.back().hi) {
    parts_.back().hi = std::max(parts_.back().hi, iv.hi);
    return;
  }
  parts_.push_back(iv);
}

double IntervalSet::measure() const {
  double total = 0.0;
  for (const Interval& iv : parts_) total += iv.length();
  return total;
}

IntervalSet IntervalSet::complement() const {
  IntervalSet out(host_);
  double cursor = host_.lo;
  for (const Interval& iv : parts_) {
    out.push({cursor, iv.lo});
    cursor = iv.hi;
  }
  out.push({cursor, host_.hi});
  return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  IntervalSet out(host_);
  out.parts_.reserve(parts_.size() + other.parts_.size());
  auto a = parts_.begin();
  auto b = other.parts_.begin();
  while (a != parts_.end() || b != other.parts_.end()) {
    if (b == other.parts_.end() || (a != parts_.end() && a->lo <= b->lo)) {
      out.push(*a++);
    } else {
      out.push(*b++);
    }
  }
  return out;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  IntervalSet out(host_);
  auto a = parts_.begin();
  auto b = other.parts_.begin();
  while (a != parts_.end() && b != other.parts_.end()) {
    out.push({std::max(a->lo, b->lo), std::min(a->hi, b->hi)});
    if (a->hi < b->hi) ++a; else ++b;
  }
  return out;
}

IntervalSet IntervalSet::reversed() const {
  IntervalSet out(host_);
  for (auto it = parts_.rbegin(); it != parts_.rend(); ++it) out.push({1.0 - it->hi, 1.0 - it->lo});
  return out;
}

bool IntervalSet::contains(double t) const {
  for (const Interval& iv : parts_)
    if (t >= iv.lo && t <= iv.hi) return true;
  return false;
}

}  // namespace equiflow
