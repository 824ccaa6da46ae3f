#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gly/errors.hpp"
#include "gly/interval.hpp"
#include "gly/rational.hpp"

namespace gly {

/// Breakpoint budget for composed maps; repeated composition grows the
/// representation and must fail loudly instead of degrading.
inline constexpr std::size_t kBreakpointCap = 100000;

// Continuous piecewise-linear self-map of a closed rational interval,
// stored as the graph nodes (t_i, v_i) it interpolates. Continuity is
// automatic in this representation. The declared codomain bounds all
// values; it is metadata for composition/inversion checks and does not
// participate in map equality.
class PLMap {
 public:
  using Node = std::pair<Rational, Rational>;

  PLMap(std::vector<Node> nodes, Interval codomain) : codomain_(std::move(codomain)) {
    if (nodes.size() < 2) throw DomainError("PL map needs at least two nodes");
    t_.reserve(nodes.size());
    v_.reserve(nodes.size());
    for (auto& [t, v] : nodes) {
      if (!t_.empty() && t <= t_.back())
        throw DomainError("PL breakpoints must be strictly increasing at t=" + t.str());
      if (!codomain_.contains(v))
        throw DomainError("PL value " + v.str() + " outside declared codomain " + codomain_.str());
      t_.push_back(std::move(t));
      v_.push_back(std::move(v));
    }
  }

  /// Nodes with codomain defaulting to the exact value range.
  static PLMap from_nodes(std::vector<Node> nodes) {
    if (nodes.size() < 2) throw DomainError("PL map needs at least two nodes");
    Rational lo = nodes[0].second, hi = nodes[0].second;
    for (const auto& [t, v] : nodes) {
      if (v < lo) lo = v;
      if (hi < v) hi = v;
    }
    return PLMap(std::move(nodes), Interval(lo, hi));
  }

  Interval domain() const { return Interval(t_.front(), t_.back()); }
  const Interval& codomain() const { return codomain_; }
  const std::vector<Rational>& breakpoints() const { return t_; }
  const std::vector<Rational>& values() const { return v_; }
  std::size_t size() const { return t_.size(); }

  /// Exact value range over the whole domain (attained at nodes).
  Interval range() const {
    Rational lo = v_[0], hi = v_[0];
    for (const auto& v : v_) {
      if (v < lo) lo = v;
      if (hi < v) hi = v;
    }
    return Interval(lo, hi);
  }

  /// Index j of the segment [t_j, t_{j+1}] containing x.
  std::size_t segment_of(const Rational& x) const {
    if (!domain().contains(x))
      throw DomainError("point " + x.str() + " outside domain " + domain().str());
    std::size_t lo = 0, hi = t_.size() - 1;
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      if (t_[mid] <= x)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  }

  Rational eval(const Rational& x) const {
    const std::size_t j = segment_of(x);
    if (x == t_[j]) return v_[j];
    if (x == t_[j + 1]) return v_[j + 1];
    return v_[j] + (x - t_[j]) * (v_[j + 1] - v_[j]) / (t_[j + 1] - t_[j]);
  }

  Rational slope(std::size_t segment) const {
    return (v_[segment + 1] - v_[segment]) / (t_[segment + 1] - t_[segment]);
  }

  PLMap with_codomain(Interval cod) const {
    std::vector<Node> nodes = this->nodes();
    return PLMap(std::move(nodes), std::move(cod));
  }

  std::vector<Node> nodes() const {
    std::vector<Node> out;
    out.reserve(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i) out.emplace_back(t_[i], v_[i]);
    return out;
  }

 private:
  std::vector<Rational> t_, v_;
  Interval codomain_;
};

inline PLMap identity_map(const Interval& dom) {
  return PLMap({{dom.lo, dom.lo}, {dom.hi, dom.hi}}, dom);
}

/// Merge interior nodes whose adjacent segments are collinear. Canonical
/// forms make map equality decidable field by field.
inline PLMap canonicalized(const PLMap& m) {
  const auto& t = m.breakpoints();
  const auto& v = m.values();
  std::vector<PLMap::Node> nodes;
  nodes.emplace_back(t[0], v[0]);
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    const auto& [tp, vp] = nodes.back();
    // collinear with the previous kept node and the next node?
    const bool collinear =
        (v[i] - vp) * (t[i + 1] - t[i]) == (v[i + 1] - v[i]) * (t[i] - tp);
    if (!collinear) nodes.emplace_back(t[i], v[i]);
  }
  nodes.emplace_back(t.back(), v.back());
  return PLMap(std::move(nodes), m.codomain());
}

/// Exact pointwise equality, decided on canonical forms. The declared
/// codomain is metadata and deliberately not compared.
inline bool maps_equal(const PLMap& a, const PLMap& b) {
  const PLMap ca = canonicalized(a), cb = canonicalized(b);
  return ca.breakpoints() == cb.breakpoints() && ca.values() == cb.values();
}

/// A point where a and b take different values, if one exists. Checks the
/// union of breakpoints, then one interior sample per merged segment,
/// which is complete for PL maps.
inline std::optional<Rational> difference_witness(const PLMap& a, const PLMap& b) {
  if (!(a.domain() == b.domain())) throw DomainError("difference_witness: domains differ");
  std::vector<Rational> grid;
  grid.reserve(a.size() + b.size());
  for (const auto& t : a.breakpoints()) grid.push_back(t);
  for (const auto& t : b.breakpoints()) grid.push_back(t);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (const auto& x : grid)
    if (a.eval(x) != b.eval(x)) return x;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    Rational mid = (grid[i] + grid[i + 1]) / 2;
    if (a.eval(mid) != b.eval(mid)) return mid;
  }
  return std::nullopt;
}

/// Exact composition outer(inner(x)), canonicalized. The inner range must
/// stay inside the outer domain; checked exactly at inner's nodes.
inline PLMap compose(const PLMap& outer, const PLMap& inner,
                     std::size_t breakpoint_cap = kBreakpointCap) {
  const Interval odom = outer.domain();
  for (const auto& v : inner.values())
    if (!odom.contains(v))
      throw CompositionError("inner value " + v.str() + " escapes outer domain " + odom.str());

  const auto& it = inner.breakpoints();
  const auto& iv = inner.values();
  std::vector<Rational> grid = it;
  // preimages, under each inner segment, of outer breakpoints crossed by it
  for (std::size_t j = 0; j + 1 < it.size(); ++j) {
    const Rational lo = min(iv[j], iv[j + 1]), hi = max(iv[j], iv[j + 1]);
    if (lo == hi) continue;
    for (const auto& b : outer.breakpoints()) {
      if (lo < b && b < hi) {
        grid.push_back(it[j] + (b - iv[j]) * (it[j + 1] - it[j]) / (iv[j + 1] - iv[j]));
      }
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  if (grid.size() > breakpoint_cap)
    throw ResourceLimitError("composition exceeds breakpoint cap (" +
                             std::to_string(breakpoint_cap) + ")");
  std::vector<PLMap::Node> nodes;
  nodes.reserve(grid.size());
  for (const auto& x : grid) nodes.emplace_back(x, outer.eval(inner.eval(x)));
  return canonicalized(PLMap(std::move(nodes), outer.codomain()));
}

/// +1 strictly increasing, -1 strictly decreasing, nullopt otherwise.
inline std::optional<int> monotone_sign(const PLMap& m) {
  const auto& v = m.values();
  int sign = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const int s = (v[i + 1] - v[i]).sign();
    if (s == 0) return std::nullopt;
    if (sign == 0) sign = s;
    if (s != sign) return std::nullopt;
  }
  return sign;
}

/// Exact inverse of a strictly monotone map that is onto its declared
/// codomain. compose(m, invert(m)) canonically equals the identity.
inline PLMap invert(const PLMap& m) {
  const auto sign = monotone_sign(m);
  if (!sign) {
    // name neighbouring breakpoints where monotonicity fails
    const auto& t = m.breakpoints();
    const auto& v = m.values();
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        if (v[i] == v[j])
          throw NotInvertibleError("not injective: value " + v[i].str() + " attained at t=" +
                                   t[i].str() + " and t=" + t[j].str());
    throw NotInvertibleError("not strictly monotone");
  }
  const Interval img = m.range();
  if (!(img == m.codomain()))
    throw NotInvertibleError("not onto declared codomain: range " + img.str() + " vs " +
                             m.codomain().str());
  std::vector<PLMap::Node> nodes;
  nodes.reserve(m.size());
  const auto& t = m.breakpoints();
  const auto& v = m.values();
  if (*sign > 0) {
    for (std::size_t i = 0; i < t.size(); ++i) nodes.emplace_back(v[i], t[i]);
  } else {
    for (std::size_t i = t.size(); i-- > 0;) nodes.emplace_back(v[i], t[i]);
  }
  return canonicalized(PLMap(std::move(nodes), m.domain()));
}

/// Exact image of [u, v] under m: extrema over endpoints and interior nodes.
inline Interval image(const PLMap& m, const Interval& in) {
  if (!subset(in, m.domain()))
    throw DomainError("image: " + in.str() + " not inside domain " + m.domain().str());
  Rational lo = m.eval(in.lo), hi = lo;
  auto take = [&](const Rational& y) {
    if (y < lo) lo = y;
    if (hi < y) hi = y;
  };
  take(m.eval(in.hi));
  const auto& t = m.breakpoints();
  const auto& v = m.values();
  for (std::size_t i = 1; i + 1 < t.size(); ++i)
    if (in.lo < t[i] && t[i] < in.hi) take(v[i]);
  return Interval(lo, hi);
}

/// Exact preimage m^{-1}([u, v]) as a disjoint sorted union of closed intervals.
inline IntervalSet preimage(const PLMap& m, const Interval& target) {
  std::vector<Interval> out;
  const auto& t = m.breakpoints();
  const auto& v = m.values();
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    if (v[j] == v[j + 1]) {
      if (target.contains(v[j])) out.emplace_back(t[j], t[j + 1]);
      continue;
    }
    // solve v_j + s (x - t_j) in [u, v] on this segment
    const Rational s = (v[j + 1] - v[j]) / (t[j + 1] - t[j]);
    Rational a = t[j] + (target.lo - v[j]) / s;
    Rational b = t[j] + (target.hi - v[j]) / s;
    if (b < a) std::swap(a, b);
    a = max(a, t[j]);
    b = min(b, t[j + 1]);
    if (a <= b) out.emplace_back(a, b);
  }
  return IntervalSet(std::move(out));
}

inline IntervalSet preimage(const PLMap& m, const IntervalSet& target) {
  std::vector<Interval> out;
  for (const auto& c : target.components()) {
    const IntervalSet piece = preimage(m, c);
    for (const auto& p : piece.components()) out.push_back(p);
  }
  return IntervalSet(std::move(out));
}

/// m composed with itself `power` times (power >= 1).
inline PLMap iterate_map(const PLMap& m, int power, std::size_t breakpoint_cap = kBreakpointCap) {
  if (power < 1) throw DomainError("iterate_map: power must be >= 1");
  PLMap acc = m;
  for (int i = 1; i < power; ++i) acc = compose(m, acc, breakpoint_cap);
  return acc;
}

/// Exact solution set of m^power(x) = x. Segments with slope 1 and zero
/// offset contribute whole intervals; all other segments at most a point.
inline IntervalSet fixed_points(const PLMap& m, int power = 1,
                                std::size_t breakpoint_cap = kBreakpointCap) {
  const PLMap p = iterate_map(m, power, breakpoint_cap);
  const auto& t = p.breakpoints();
  const auto& v = p.values();
  std::vector<Interval> out;
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    const Rational dv = v[j + 1] - v[j], dt = t[j + 1] - t[j];
    if (dv == dt) {  // slope exactly 1
      if (v[j] == t[j]) out.emplace_back(t[j], t[j + 1]);
      continue;
    }
    // (s - 1) x = s t_j - v_j with s = dv/dt, rearranged over dt
    const Rational x = (v[j] * dt - t[j] * dv) / (dt - dv);
    if (t[j] <= x && x <= t[j + 1]) out.emplace_back(x, x);
  }
  return IntervalSet(std::move(out));
}

/// Restriction of m to a subinterval of its domain (same codomain).
inline PLMap restrict(const PLMap& m, const Interval& in) {
  if (!subset(in, m.domain()))
    throw DomainError("restrict: " + in.str() + " not inside domain " + m.domain().str());
  std::vector<PLMap::Node> nodes;
  nodes.emplace_back(in.lo, m.eval(in.lo));
  const auto& t = m.breakpoints();
  const auto& v = m.values();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (in.lo < t[i] && t[i] < in.hi) nodes.emplace_back(t[i], v[i]);
  nodes.emplace_back(in.hi, m.eval(in.hi));
  return canonicalized(PLMap(std::move(nodes), m.codomain()));
}

}  // namespace gly
