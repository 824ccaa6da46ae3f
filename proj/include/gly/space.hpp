#pragma once

#include <string>
#include <variant>

#include "gly/errors.hpp"
#include "gly/interval.hpp"
#include "gly/plmap.hpp"
#include "gly/rational.hpp"

namespace gly {

struct IntervalSpace {
  Interval bounds;
};

// Unit-circumference circle; points are rationals taken mod 1.
struct CircleSpace {};

using PhaseSpace = std::variant<IntervalSpace, CircleSpace>;

inline bool is_circle(const PhaseSpace& s) { return std::holds_alternative<CircleSpace>(s); }

inline const Interval& interval_bounds(const PhaseSpace& s) {
  if (const auto* is = std::get_if<IntervalSpace>(&s)) return is->bounds;
  throw InternalError("interval_bounds on a circle space");
}

/// Circle points normalize into [0, 1); interval points must lie in bounds.
inline Rational normalize_point(const PhaseSpace& s, const Rational& x) {
  if (is_circle(s)) return x.mod1();
  if (!interval_bounds(s).contains(x))
    throw DomainError("point " + x.str() + " outside space " + interval_bounds(s).str());
  return x;
}

inline bool space_contains(const PhaseSpace& s, const Rational& x) {
  return is_circle(s) || interval_bounds(s).contains(x);
}

/// |x-y| on intervals; arc distance min(|x-y|, 1-|x-y|) on the circle.
inline Rational metric(const PhaseSpace& s, const Rational& x, const Rational& y) {
  if (!is_circle(s)) return (x - y).abs();
  const Rational d = (x.mod1() - y.mod1()).abs();
  return min(d, Rational(1) - d);
}

inline Rational diameter(const PhaseSpace& s) {
  return is_circle(s) ? Rational(1, 2) : interval_bounds(s).length();
}

// Rigid rotation of the circle by a rational angle (an exact isometry).
struct CircleRotation {
  Rational angle;  // normalized to [0, 1)
  explicit CircleRotation(Rational a) : angle(a.mod1()) {}
  CircleRotation() : angle(0) {}
};

// A self-map usable as a group generator or realized group element:
// a PL homeomorphism of an interval, or a rotation of the circle.
using SpaceMap = std::variant<PLMap, CircleRotation>;

inline Rational eval(const SpaceMap& m, const Rational& x) {
  if (const auto* pl = std::get_if<PLMap>(&m)) return pl->eval(x);
  return (std::get<CircleRotation>(m).angle + x).mod1();
}

inline SpaceMap compose(const SpaceMap& outer, const SpaceMap& inner,
                        std::size_t breakpoint_cap = kBreakpointCap) {
  if (const auto* po = std::get_if<PLMap>(&outer)) {
    const auto* pi = std::get_if<PLMap>(&inner);
    if (!pi) throw InternalError("compose: mixed PL/rotation maps");
    return compose(*po, *pi, breakpoint_cap);
  }
  const auto* ri = std::get_if<CircleRotation>(&inner);
  if (!ri) throw InternalError("compose: mixed PL/rotation maps");
  return CircleRotation(std::get<CircleRotation>(outer).angle + ri->angle);
}

inline SpaceMap inverse(const SpaceMap& m) {
  if (const auto* pl = std::get_if<PLMap>(&m)) return invert(*pl);
  return CircleRotation(-std::get<CircleRotation>(m).angle);
}

inline bool maps_equal(const SpaceMap& a, const SpaceMap& b) {
  if (const auto* pa = std::get_if<PLMap>(&a)) {
    const auto* pb = std::get_if<PLMap>(&b);
    return pb && maps_equal(*pa, *pb);
  }
  const auto* rb = std::get_if<CircleRotation>(&b);
  return rb && std::get<CircleRotation>(a).angle == rb->angle;
}

/// Canonical text key; equal keys iff maps_equal. Used for deduplication.
inline std::string canonical_key(const SpaceMap& m) {
  if (const auto* rot = std::get_if<CircleRotation>(&m)) return "rot " + rot->angle.str();
  const PLMap c = canonicalized(std::get<PLMap>(m));
  std::string key = "pl";
  for (std::size_t i = 0; i < c.size(); ++i)
    key += " " + c.breakpoints()[i].str() + ":" + c.values()[i].str();
  return key;
}

inline std::size_t breakpoint_count(const SpaceMap& m) {
  const auto* pl = std::get_if<PLMap>(&m);
  return pl ? pl->size() : 1;
}

inline SpaceMap identity_of(const PhaseSpace& s) {
  if (is_circle(s)) return CircleRotation(Rational(0));
  return identity_map(interval_bounds(s));
}

}  // namespace gly
