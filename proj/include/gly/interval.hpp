#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gly/errors.hpp"
#include "gly/rational.hpp"

namespace gly {

// Closed interval [lo, hi] with rational endpoints; lo == hi is a point.
struct Interval {
  Rational lo, hi;

  Interval() = default;
  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw DomainError("interval with hi < lo: [" + lo.str() + ", " + hi.str() + "]");
  }

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool is_point() const { return lo == hi; }
  Rational length() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / 2; }
  std::string str() const { return "[" + lo.str() + ", " + hi.str() + "]"; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

inline bool subset(const Interval& inner, const Interval& outer) {
  return outer.lo <= inner.lo && inner.hi <= outer.hi;
}

inline bool intersects(const Interval& a, const Interval& b) {
  return a.lo <= b.hi && b.lo <= a.hi;
}

inline std::optional<Interval> intersection(const Interval& a, const Interval& b) {
  if (!intersects(a, b)) return std::nullopt;
  return Interval(max(a.lo, b.lo), min(a.hi, b.hi));
}

inline Interval hull(const Interval& a, const Interval& b) {
  return Interval(min(a.lo, b.lo), max(a.hi, b.hi));
}

// Finite union of closed intervals, kept sorted and pairwise disjoint
// (touching components are merged, so the representation is canonical).
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> comps) : comps_(std::move(comps)) { normalize(); }
  explicit IntervalSet(const Interval& one) : comps_{one} {}

  const std::vector<Interval>& components() const { return comps_; }
  bool empty() const { return comps_.empty(); }
  std::size_t size() const { return comps_.size(); }

  bool contains(const Rational& x) const {
    for (const auto& c : comps_)
      if (c.contains(x)) return true;
    return false;
  }

  void add(const Interval& iv) {
    comps_.push_back(iv);
    normalize();
  }

  IntervalSet intersect(const Interval& iv) const {
    std::vector<Interval> out;
    for (const auto& c : comps_)
      if (auto i = intersection(c, iv)) out.push_back(*i);
    return IntervalSet(std::move(out));
  }

  IntervalSet intersect(const IntervalSet& other) const {
    std::vector<Interval> out;
    for (const auto& c : comps_)
      for (const auto& d : other.comps_)
        if (auto i = intersection(c, d)) out.push_back(*i);
    return IntervalSet(std::move(out));
  }

  // Closure of the set difference: endpoints shared with `other` survive,
  // a measure-zero artifact callers must tolerate or post-filter.
  IntervalSet subtract_closure(const IntervalSet& other) const {
    std::vector<Interval> out;
    for (const auto& c : comps_) {
      std::vector<Interval> pieces{c};
      for (const auto& d : other.comps_) {
        std::vector<Interval> next;
        for (const auto& p : pieces) {
          if (!intersects(p, d) || d.is_point()) {
            next.push_back(p);
            continue;
          }
          if (p.lo < d.lo) next.emplace_back(p.lo, min(p.hi, d.lo));
          if (d.hi < p.hi) next.emplace_back(max(p.lo, d.hi), p.hi);
        }
        pieces = std::move(next);
      }
      out.insert(out.end(), pieces.begin(), pieces.end());
    }
    return IntervalSet(std::move(out));
  }

  bool is_subset_of(const IntervalSet& other) const {
    for (const auto& c : comps_) {
      bool covered = false;
      for (const auto& d : other.comps_)
        if (subset(c, d)) {
          covered = true;
          break;
        }
      if (!covered) return false;
    }
    return true;
  }

  std::string str() const {
    if (comps_.empty()) return "{}";
    std::string s;
    for (const auto& c : comps_) {
      if (!s.empty()) s += " u ";
      s += c.is_point() ? "{" + c.lo.str() + "}" : c.str();
    }
    return s;
  }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.comps_ == b.comps_;
  }

 private:
  void normalize() {
    std::sort(comps_.begin(), comps_.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> merged;
    for (const auto& c : comps_) {
      if (!merged.empty() && c.lo <= merged.back().hi) {
        if (merged.back().hi < c.hi) merged.back().hi = c.hi;
      } else {
        merged.push_back(c);
      }
    }
    comps_ = std::move(merged);
  }

  std::vector<Interval> comps_;
};

}  // namespace gly
