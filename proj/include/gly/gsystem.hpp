#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gly/errors.hpp"
#include "gly/group.hpp"
#include "gly/interval.hpp"
#include "gly/parallel.hpp"
#include "gly/plmap.hpp"
#include "gly/rational.hpp"
#include "gly/space.hpp"

namespace gly {

// The dynamics f of a system. `power` iterates the base map that many
// times per step, so powered systems share the base representation.
struct Dynamics {
  enum class Kind { PL, Identity, Rotation };
  Kind kind = Kind::Identity;
  std::optional<PLMap> pl;  // Kind::PL
  Rational angle;           // Kind::Rotation, mod 1
  int power = 1;

  static Dynamics identity() { return Dynamics{}; }
  static Dynamics from_pl(PLMap m) { return Dynamics{Kind::PL, std::move(m), Rational(0), 1}; }
  static Dynamics rotation(Rational a) {
    return Dynamics{Kind::Rotation, std::nullopt, a.mod1(), 1};
  }

  Dynamics powered(int extra) const {
    Dynamics d = *this;
    d.power *= extra;
    return d;
  }
};

inline Rational dynamics_step(const PhaseSpace& space, const Dynamics& dyn, Rational x) {
  switch (dyn.kind) {
    case Dynamics::Kind::Identity:
      return x;
    case Dynamics::Kind::Rotation:
      return (x + dyn.angle * dyn.power).mod1();
    case Dynamics::Kind::PL:
      for (int i = 0; i < dyn.power; ++i) x = dyn.pl->eval(x);
      return normalize_point(space, x);
  }
  throw InternalError("dynamics_step: bad kind");
}

/// Exact set image of an interval under one step (interval spaces only).
inline Interval dynamics_image(const Dynamics& dyn, Interval in) {
  switch (dyn.kind) {
    case Dynamics::Kind::Identity:
      return in;
    case Dynamics::Kind::PL:
      for (int i = 0; i < dyn.power; ++i) in = image(*dyn.pl, in);
      return in;
    case Dynamics::Kind::Rotation:
      throw InternalError("dynamics_image: rotation dynamics live on the circle");
  }
  throw InternalError("dynamics_image: bad kind");
}

/// The dynamics realized as one exact SpaceMap (power composed in).
inline SpaceMap dynamics_as_map(const PhaseSpace& space, const Dynamics& dyn,
                                std::size_t breakpoint_cap = kBreakpointCap) {
  switch (dyn.kind) {
    case Dynamics::Kind::Identity:
      return identity_of(space);
    case Dynamics::Kind::Rotation:
      return CircleRotation(dyn.angle * dyn.power);
    case Dynamics::Kind::PL:
      return iterate_map(*dyn.pl, dyn.power, breakpoint_cap);
  }
  throw InternalError("dynamics_as_map: bad kind");
}

// Metric G-space system: phase space, dynamics, and generating set.
struct GSystem {
  std::string name;
  PhaseSpace space;
  Dynamics dynamics;
  GeneratorSet generators;
};

/// Structural compatibility: PL maps live on the interval and cover it,
/// rotations live on the circle, dynamics maps the space into itself.
inline void validate_system(const GSystem& sys) {
  if (is_circle(sys.space)) {
    if (sys.dynamics.kind == Dynamics::Kind::PL)
      throw ValidationError("circle spaces take identity or rotation dynamics");
    for (const auto& g : sys.generators.all())
      if (!std::holds_alternative<CircleRotation>(g.map))
        throw ValidationError("circle generators must be rotations (generator \"" + g.name +
                              "\")");
    return;
  }
  const Interval& bounds = interval_bounds(sys.space);
  if (sys.dynamics.kind == Dynamics::Kind::Rotation)
    throw ValidationError("rotation dynamics require a circle space");
  if (sys.dynamics.kind == Dynamics::Kind::PL) {
    if (!(sys.dynamics.pl->domain() == bounds))
      throw ValidationError("dynamics domain " + sys.dynamics.pl->domain().str() +
                            " differs from space " + bounds.str());
    if (!subset(sys.dynamics.pl->range(), bounds))
      throw ValidationError("dynamics range " + sys.dynamics.pl->range().str() +
                            " escapes space " + bounds.str());
  }
  for (const auto& g : sys.generators.all())
    if (!std::holds_alternative<PLMap>(g.map))
      throw ValidationError("interval generators must be PL maps (generator \"" + g.name + "\")");
}

struct ActionReport {
  bool pass = true;
  std::vector<std::string> failures;
};

/// Verifies each generator is a self-homeomorphism of the space and that
/// the supplied inverses compose to the identity, exactly.
inline ActionReport check_action(const GSystem& sys) {
  ActionReport report;
  auto fail = [&](std::string msg) {
    report.pass = false;
    report.failures.push_back(std::move(msg));
  };
  for (const auto& g : sys.generators.all()) {
    if (is_circle(sys.space)) {
      const auto* rot = std::get_if<CircleRotation>(&g.map);
      const auto* rinv = std::get_if<CircleRotation>(&g.inv);
      if (!rot || !rinv) {
        fail("generator \"" + g.name + "\": circle generators must be rotations");
        continue;
      }
      if ((rot->angle + rinv->angle).mod1() != Rational(0))
        fail("generator \"" + g.name + "\": inverse angle mismatch");
      continue;
    }
    const Interval& bounds = interval_bounds(sys.space);
    const auto* pl = std::get_if<PLMap>(&g.map);
    if (!pl) {
      fail("generator \"" + g.name + "\": interval generators must be PL maps");
      continue;
    }
    if (!(pl->domain() == bounds)) {
      fail("generator \"" + g.name + "\": domain " + pl->domain().str() + " is not the space " +
           bounds.str());
      continue;
    }
    if (!monotone_sign(*pl)) {
      fail("generator \"" + g.name + "\": not strictly monotone");
      continue;
    }
    if (!(pl->range() == bounds)) {
      fail("generator \"" + g.name + "\": image " + pl->range().str() + " is not onto " +
           bounds.str());
      continue;
    }
    const SpaceMap id = identity_of(sys.space);
    if (!maps_equal(compose(g.map, g.inv), id) || !maps_equal(compose(g.inv, g.map), id))
      fail("generator \"" + g.name + "\": inverse does not compose to identity");
  }
  return report;
}

struct EquivarianceReport {
  bool equivariant = true;
  std::optional<std::string> generator;  // first failing generator
  std::optional<Rational> witness_x;     // point with f(g x) != g(f x)
  std::optional<Rational> f_g_x, g_f_x;
};

/// Exact decision of f(gx) = g f(x). Checking the generators suffices:
/// commuting with g forces commuting with g^{-1} and with all products.
inline EquivarianceReport check_equivariance(const GSystem& sys,
                                             std::size_t breakpoint_cap = kBreakpointCap) {
  EquivarianceReport report;
  if (sys.dynamics.kind == Dynamics::Kind::Identity) return report;
  if (sys.dynamics.kind == Dynamics::Kind::Rotation) return report;  // rotations commute
  const SpaceMap f = dynamics_as_map(sys.space, sys.dynamics, breakpoint_cap);
  for (const auto& g : sys.generators.all()) {
    const SpaceMap fg = compose(f, g.map, breakpoint_cap);   // x -> f(g(x))
    const SpaceMap gf = compose(g.map, f, breakpoint_cap);   // x -> g(f(x))
    if (maps_equal(fg, gf)) continue;
    const auto x = difference_witness(std::get<PLMap>(fg), std::get<PLMap>(gf));
    if (!x) throw InternalError("inequal maps without witness");
    report.equivariant = false;
    report.generator = g.name;
    report.witness_x = *x;
    report.f_g_x = eval(fg, *x);
    report.g_f_x = eval(gf, *x);
    return report;
  }
  return report;
}

struct CellHit {
  int steps = 0;
  Word word;
};

struct TransitivityParams {
  Rational grid_delta;
  int horizon = 16;
  int radius = 1;
  int workers = 1;
  BallLimits limits;
};

struct TransitivityReport {
  bool pass = false;
  Rational grid_delta;
  int horizon = 0;
  int radius = 0;
  std::size_t cell_count = 0;
  std::vector<std::vector<std::optional<CellHit>>> matrix;  // [from][to]
  std::optional<std::pair<std::size_t, std::size_t>> unreached;
};

namespace detail {
// Closed arcs [a, a+la] and [b, b+lb] on the unit circle intersect iff
// one start lies within the other's sweep.
inline bool arcs_intersect(const Rational& a, const Rational& la, const Rational& b,
                           const Rational& lb) {
  return (b - a).mod1() <= la || (a - b).mod1() <= lb;
}
}  // namespace detail

/// Ordered-pair reachability over a closed grid of delta-cells: search
/// n <= horizon and g in ball(radius) with g(f^n(U)) meeting V, exactly.
/// Pass requires every ordered pair reached; each hit records the
/// smallest (n, word). Cell pairs scan in parallel; the matrix layout is
/// worker-count independent.
inline TransitivityReport check_g_transitivity(const GSystem& sys,
                                               const TransitivityParams& params) {
  const Rational delta = params.grid_delta;
  if (delta <= Rational(0)) throw ValidationError("grid delta must be positive");
  const Rational cells_q = diameter(sys.space) / delta;
  if (is_circle(sys.space)) {
    if (!(Rational(1) / delta).is_integer())
      throw ValidationError("grid delta must divide the circle circumference");
  } else if (!cells_q.is_integer()) {
    throw ValidationError("grid delta must divide the space length exactly");
  }
  if (params.horizon < 1) throw ValidationError("horizon must be >= 1");

  TransitivityReport report;
  report.grid_delta = delta;
  report.horizon = params.horizon;
  report.radius = params.radius;

  const CayleyBall ball = ball_enumerate(sys.generators, sys.space, params.radius, params.limits);

  if (is_circle(sys.space)) {
    const std::size_t m = static_cast<std::size_t>((Rational(1) / delta).to_long());
    report.cell_count = m;
    report.matrix.assign(m, std::vector<std::optional<CellHit>>(m));
    // rotation/identity dynamics shift every cell by the same amount per step
    std::vector<Rational> shift(params.horizon + 1, Rational(0));
    for (int n = 1; n <= params.horizon; ++n)
      shift[n] = (shift[n - 1] + (sys.dynamics.kind == Dynamics::Kind::Rotation
                                      ? sys.dynamics.angle * sys.dynamics.power
                                      : Rational(0)))
                     .mod1();
    parallel_for(m * m, params.workers, [&](std::size_t pair_idx) {
      const std::size_t i = pair_idx / m, j = pair_idx % m;
      const Rational u = Rational(static_cast<long>(i)) * delta;
      const Rational v = Rational(static_cast<long>(j)) * delta;
      for (int n = 1; n <= params.horizon && !report.matrix[i][j]; ++n) {
        for (std::size_t e = 0; e < ball.size(); ++e) {
          const Rational g_shift = std::get<CircleRotation>(ball.elements()[e].realized).angle;
          if (detail::arcs_intersect((u + shift[n] + g_shift).mod1(), delta, v.mod1(), delta)) {
            report.matrix[i][j] = CellHit{n, ball.elements()[e].word};
            break;
          }
        }
      }
    });
  } else {
    const std::size_t m = static_cast<std::size_t>(cells_q.to_long());
    report.cell_count = m;
    report.matrix.assign(m, std::vector<std::optional<CellHit>>(m));
    const Interval& bounds = interval_bounds(sys.space);
    std::vector<Interval> cells;
    cells.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
      cells.emplace_back(bounds.lo + Rational(static_cast<long>(i)) * delta,
                         bounds.lo + Rational(static_cast<long>(i + 1)) * delta);
    // forward image orbit of every cell, computed once
    std::vector<std::vector<Interval>> orbit(m);
    parallel_for(m, params.workers, [&](std::size_t i) {
      orbit[i].reserve(params.horizon);
      Interval cur = cells[i];
      for (int n = 1; n <= params.horizon; ++n) {
        cur = dynamics_image(sys.dynamics, cur);
        orbit[i].push_back(cur);
      }
    });
    parallel_for(m * m, params.workers, [&](std::size_t pair_idx) {
      const std::size_t i = pair_idx / m, j = pair_idx % m;
      for (int n = 1; n <= params.horizon && !report.matrix[i][j]; ++n) {
        for (std::size_t e = 0; e < ball.size(); ++e) {
          const Interval img = image(std::get<PLMap>(ball.elements()[e].realized),
                                     orbit[i][static_cast<std::size_t>(n - 1)]);
          if (intersects(img, cells[j])) {
            report.matrix[i][j] = CellHit{n, ball.elements()[e].word};
            break;
          }
        }
      }
    });
  }

  report.pass = true;
  for (std::size_t i = 0; i < report.matrix.size() && report.pass; ++i)
    for (std::size_t j = 0; j < report.matrix.size(); ++j)
      if (!report.matrix[i][j]) {
        report.pass = false;
        report.unreached = {i, j};
        break;
      }
  return report;
}

struct TransitivePointResult {
  Rational point;
  std::size_t orbit_size = 0;
  Rational max_gap;  // largest uncovered gap radius bound: gap/2 on interior
};

/// Scan a grid of starting points for one whose finite G-orbit
/// {g f^k(x) : k <= horizon, g in ball(radius)} is eps-dense.
inline std::optional<TransitivePointResult> find_g_transitive_point(
    const GSystem& sys, const Rational& eps, int horizon, int radius, int grid_points = 17,
    const BallLimits& limits = {}) {
  if (eps <= Rational(0)) throw ValidationError("eps must be positive");
  if (grid_points < 1) throw ValidationError("grid_points must be >= 1");
  const CayleyBall ball = ball_enumerate(sys.generators, sys.space, radius, limits);

  std::vector<Rational> starts;
  if (is_circle(sys.space)) {
    for (int k = 0; k < grid_points; ++k) starts.push_back(Rational(k, grid_points));
  } else {
    const Interval& b = interval_bounds(sys.space);
    if (grid_points == 1) {
      starts.push_back(b.midpoint());
    } else {
      for (int k = 0; k < grid_points; ++k)
        starts.push_back(b.lo + b.length() * Rational(k, grid_points - 1));
    }
  }

  for (const Rational& start : starts) {
    std::vector<Rational> orbit;
    Rational x = normalize_point(sys.space, start);
    for (int k = 0; k <= horizon; ++k) {
      for (const auto& el : ball.elements())
        orbit.push_back(normalize_point(sys.space, eval(el.realized, x)));
      if (k < horizon) x = dynamics_step(sys.space, sys.dynamics, x);
    }
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());

    bool dense = true;
    Rational max_gap(0);
    if (is_circle(sys.space)) {
      for (std::size_t i = 0; i < orbit.size() && dense; ++i) {
        const Rational gap = i + 1 < orbit.size() ? orbit[i + 1] - orbit[i]
                                                  : Rational(1) - orbit.back() + orbit.front();
        max_gap = max(max_gap, gap);
        dense = gap <= eps * 2;
      }
    } else {
      const Interval& b = interval_bounds(sys.space);
      dense = !orbit.empty() && orbit.front() - b.lo <= eps && b.hi - orbit.back() <= eps;
      max_gap = max(orbit.front() - b.lo, b.hi - orbit.back());
      for (std::size_t i = 0; i + 1 < orbit.size() && dense; ++i) {
        max_gap = max(max_gap, orbit[i + 1] - orbit[i]);
        dense = orbit[i + 1] - orbit[i] <= eps * 2;
      }
    }
    if (dense) return TransitivePointResult{start, orbit.size(), max_gap};
  }
  return std::nullopt;
}

struct RecurrenceResult {
  bool recurrent = false;
  Rational eps;
  Rational best_distance;
  int best_n = 0;
  Word best_word;
};

/// True iff some n <= horizon and g in ball(radius) bring g(f^n(x))
/// within eps of x. Reports the global minimizer (smallest n on ties).
inline RecurrenceResult check_g_recurrent(const GSystem& sys, const Rational& x,
                                          const Rational& eps, int horizon, int radius,
                                          const BallLimits& limits = {}) {
  if (eps <= Rational(0)) throw ValidationError("eps must be positive");
  if (horizon < 1) throw ValidationError("horizon must be >= 1");
  const Rational x0 = normalize_point(sys.space, x);
  const CayleyBall ball = ball_enumerate(sys.generators, sys.space, radius, limits);
  RecurrenceResult res;
  res.eps = eps;
  Rational y = x0;
  for (int n = 1; n <= horizon; ++n) {
    y = dynamics_step(sys.space, sys.dynamics, y);
    for (const auto& el : ball.elements()) {
      const Rational d = metric(sys.space, normalize_point(sys.space, eval(el.realized, y)), x0);
      if (n == 1 && el.word.empty()) {
        res.best_distance = d;
        res.best_n = 1;
        res.best_word = el.word;
      } else if (d < res.best_distance) {
        res.best_distance = d;
        res.best_n = n;
        res.best_word = el.word;
      }
    }
  }
  res.recurrent = res.best_distance < eps;
  return res;
}

namespace detail {
inline IntervalSet whole_space_set(const PhaseSpace& space) {
  if (is_circle(space)) return IntervalSet(Interval(Rational(0), Rational(1)));
  return IntervalSet(interval_bounds(space));
}

inline IntervalSet generator_fixed_set(const PhaseSpace& space, const SpaceMap& m) {
  if (const auto* rot = std::get_if<CircleRotation>(&m)) {
    if (rot->angle == Rational(0)) return whole_space_set(space);
    return IntervalSet{};
  }
  return fixed_points(std::get<PLMap>(m), 1);
}

inline IntervalSet dynamics_fixed_set(const GSystem& sys, int power, std::size_t cap) {
  switch (sys.dynamics.kind) {
    case Dynamics::Kind::Identity:
      return whole_space_set(sys.space);
    case Dynamics::Kind::Rotation:
      return (sys.dynamics.angle * sys.dynamics.power * power).mod1() == Rational(0)
                 ? whole_space_set(sys.space)
                 : IntervalSet{};
    case Dynamics::Kind::PL:
      return fixed_points(*sys.dynamics.pl, sys.dynamics.power * power, cap);
  }
  throw InternalError("dynamics_fixed_set: bad kind");
}
}  // namespace detail

/// Exact set of points fixed by the dynamics and by every generator
/// (hence by every group element). Interval components are whole
/// segments of coincident fixed behaviour.
inline IntervalSet check_common_fixed_point(const GSystem& sys,
                                            std::size_t breakpoint_cap = kBreakpointCap) {
  IntervalSet acc = detail::dynamics_fixed_set(sys, 1, breakpoint_cap);
  for (const auto& g : sys.generators.all())
    acc = acc.intersect(detail::generator_fixed_set(sys.space, g.map));
  return acc;
}

struct PeriodicPoint {
  Interval component;  // a point when lo == hi
  int period = 1;      // minimal period
};

/// Exact periodic points of f with minimal period <= max_period that are
/// fixed by every generator. Interval components whose interior overlaps a
/// lower-period set are split; shared boundary points may survive as a
/// closure artifact (they are filtered exactly for point components).
inline std::vector<PeriodicPoint> check_periodic_common_point(
    const GSystem& sys, int max_period, std::size_t breakpoint_cap = kBreakpointCap) {
  if (max_period < 1) throw ValidationError("max_period must be >= 1");
  IntervalSet genfix = detail::whole_space_set(sys.space);
  for (const auto& g : sys.generators.all())
    genfix = genfix.intersect(detail::generator_fixed_set(sys.space, g.map));

  auto f_iter = [&](Rational x, int k) {
    for (int i = 0; i < k; ++i) x = dynamics_step(sys.space, sys.dynamics, x);
    return x;
  };

  std::vector<IntervalSet> fix(static_cast<std::size_t>(max_period) + 1);
  for (int n = 1; n <= max_period; ++n)
    fix[static_cast<std::size_t>(n)] = detail::dynamics_fixed_set(sys, n, breakpoint_cap);

  std::vector<PeriodicPoint> out;
  for (int n = 1; n <= max_period; ++n) {
    const IntervalSet candidates = fix[static_cast<std::size_t>(n)].intersect(genfix);
    for (const Interval& comp : candidates.components()) {
      if (comp.is_point()) {
        int minimal = n;
        for (int d = 1; d < n; ++d)
          if (n % d == 0 && f_iter(comp.lo, d) == comp.lo) {
            minimal = d;
            break;
          }
        if (minimal == n) out.push_back(PeriodicPoint{comp, n});
        continue;
      }
      IntervalSet remainder(comp);
      bool swallowed = false;
      for (int d = 1; d < n && !swallowed; ++d) {
        if (n % d != 0) continue;
        const IntervalSet& lower = fix[static_cast<std::size_t>(d)];
        if (IntervalSet(comp).is_subset_of(lower)) swallowed = true;
        remainder = remainder.subtract_closure(lower);
      }
      if (swallowed) continue;
      for (const Interval& piece : remainder.components()) {
        if (piece.is_point()) {
          int minimal = n;
          for (int d = 1; d < n; ++d)
            if (n % d == 0 && f_iter(piece.lo, d) == piece.lo) {
              minimal = d;
              break;
            }
          if (minimal < n) continue;
        }
        out.push_back(PeriodicPoint{piece, n});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const PeriodicPoint& a, const PeriodicPoint& b) {
    if (a.component.lo != b.component.lo) return a.component.lo < b.component.lo;
    return a.period < b.period;
  });
  return out;
}

// Aggregate of the structural hypotheses a system can be checked against.
// Populated piecewise by the analysis commands; every failed verdict
// carries a concrete witness inside its section.
struct HypothesisReport {
  std::optional<ActionReport> action;
  std::optional<EquivarianceReport> equivariance;
  std::optional<TransitivityReport> transitivity;
  std::optional<IntervalSet> common_fixed_points;
  std::vector<std::pair<Rational, RecurrenceResult>> recurrence_samples;
};

}  // namespace gly
