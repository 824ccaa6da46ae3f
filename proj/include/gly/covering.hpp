#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gly/chaos.hpp"
#include "gly/errors.hpp"
#include "gly/group.hpp"
#include "gly/gsystem.hpp"

namespace gly {

// Finite-depth covering structure: decreasing interval chains around two
// separated anchor points, with one (time, group word) pair per level
// whose composed map's exact image of either current set covers both
// next-level sets. Depth k means k+1 sets per chain and k levels.
struct CoveringStructure {
  std::vector<Interval> A, B;  // sizes depth()+1
  std::vector<int> times;      // n_i >= 1 per level
  std::vector<Word> words;     // one group word per level

  int depth() const { return static_cast<int>(times.size()); }
};

struct CoveringVerdict {
  bool pass = false;
  int fail_level = -1;
  std::string fail_what;
  Rational separation;  // distance between the deepest sets
};

namespace covdetail {

// On the circle a stored interval [lo, hi] is the arc swept from lo to hi
// (length <= 1); comparisons are mod 1 so arcs may live un-normalized.
inline bool arc_subset(const Interval& inner, const Interval& outer) {
  const Rational k = (outer.lo - inner.lo).floor();
  for (int off = 0; off <= 1; ++off) {
    const Rational shift = k + Rational(off);
    if (outer.lo <= inner.lo + shift && inner.hi + shift <= outer.hi) return true;
  }
  return false;
}

inline bool set_subset(const PhaseSpace& space, const Interval& inner, const Interval& outer) {
  return is_circle(space) ? arc_subset(inner, outer) : subset(inner, outer);
}

inline bool sets_disjoint(const PhaseSpace& space, const Interval& a, const Interval& b) {
  if (!is_circle(space)) return !intersects(a, b);
  return !detail::arcs_intersect(a.lo.mod1(), a.length(), b.lo.mod1(), b.length());
}

inline Rational set_separation(const PhaseSpace& space, const Interval& a, const Interval& b) {
  if (!is_circle(space)) {
    if (intersects(a, b)) return Rational(0);
    return a.hi < b.lo ? b.lo - a.hi : a.lo - b.hi;
  }
  if (detail::arcs_intersect(a.lo.mod1(), a.length(), b.lo.mod1(), b.length())) return Rational(0);
  const Rational d1 = (b.lo - a.hi).mod1(), d2 = (a.lo - b.hi).mod1();
  return min(d1, d2);
}

/// Exact image of a level set under w o f^n: dynamics images stepwise,
/// then the word's realized map.
inline Interval level_image(const GSystem& sys, const SpaceMap& word_map, int steps,
                            Interval set) {
  if (is_circle(sys.space)) {
    Rational shift = std::get<CircleRotation>(word_map).angle;
    if (sys.dynamics.kind == Dynamics::Kind::Rotation)
      shift += sys.dynamics.angle * sys.dynamics.power * steps;
    return Interval(set.lo + shift, set.hi + shift);
  }
  for (int s = 0; s < steps; ++s) set = dynamics_image(sys.dynamics, set);
  return image(std::get<PLMap>(word_map), set);
}

}  // namespace covdetail

/// Exact verification of every structure invariant. The first violated
/// condition is reported with its level. Search results are untrusted;
/// this is the authority.
inline CoveringVerdict verify_covering(const GSystem& sys, const CoveringStructure& s,
                                       const BallLimits& limits = {}) {
  const int k = s.depth();
  if (s.A.size() != static_cast<std::size_t>(k) + 1 || s.B.size() != s.A.size() ||
      s.words.size() != static_cast<std::size_t>(k))
    throw ValidationError("covering structure with inconsistent lengths");

  CoveringVerdict verdict;
  auto fail = [&](int level, std::string what) {
    verdict.pass = false;
    verdict.fail_level = level;
    verdict.fail_what = std::move(what);
    return verdict;
  };

  for (int i = 0; i < k; ++i) {
    if (s.times[static_cast<std::size_t>(i)] < 1) return fail(i, "time must be >= 1");
    if (!covdetail::set_subset(sys.space, s.A[static_cast<std::size_t>(i) + 1],
                               s.A[static_cast<std::size_t>(i)]))
      return fail(i, "A chain not decreasing");
    if (!covdetail::set_subset(sys.space, s.B[static_cast<std::size_t>(i) + 1],
                               s.B[static_cast<std::size_t>(i)]))
      return fail(i, "B chain not decreasing");
  }
  if (!covdetail::sets_disjoint(sys.space, s.A.back(), s.B.back()))
    return fail(k, "deepest sets intersect");

  for (int i = 0; i < k; ++i) {
    const SpaceMap w = realize_word(sys.generators, s.words[static_cast<std::size_t>(i)],
                                    sys.space, limits.compose_breakpoint_cap);
    const int n = s.times[static_cast<std::size_t>(i)];
    const Interval imgA = covdetail::level_image(sys, w, n, s.A[static_cast<std::size_t>(i)]);
    const Interval imgB = covdetail::level_image(sys, w, n, s.B[static_cast<std::size_t>(i)]);
    const Interval &nextA = s.A[static_cast<std::size_t>(i) + 1],
                   &nextB = s.B[static_cast<std::size_t>(i) + 1];
    if (!covdetail::set_subset(sys.space, nextA, imgA))
      return fail(i, "A_{i+1} not inside image of A_i");
    if (!covdetail::set_subset(sys.space, nextB, imgA))
      return fail(i, "B_{i+1} not inside image of A_i");
    if (!covdetail::set_subset(sys.space, nextA, imgB))
      return fail(i, "A_{i+1} not inside image of B_i");
    if (!covdetail::set_subset(sys.space, nextB, imgB))
      return fail(i, "B_{i+1} not inside image of B_i");
  }
  verdict.pass = true;
  verdict.separation = covdetail::set_separation(sys.space, s.A.back(), s.B.back());
  return verdict;
}

struct CoveringSearchParams {
  int depth = 8;
  int radius = 0;
  int horizon = 16;
  std::optional<Rational> initial_radius;  // default: d(a0, b0) / 4
  BallLimits limits;
};

/// Heuristic discovery: anchor both chains at the seeds, halve radii per
/// level, and search (n <= horizon, word in ball) for a map whose exact
/// image of BOTH current sets covers both next-level sets. Absence is a
/// valid outcome; isometric systems never expand and honestly fail.
inline std::optional<CoveringStructure> search_covering(const GSystem& sys, const Rational& a0,
                                                        const Rational& b0,
                                                        const CoveringSearchParams& params = {}) {
  const Rational a = normalize_point(sys.space, a0), b = normalize_point(sys.space, b0);
  if (a == b) throw ValidationError("covering seeds must be distinct");
  if (params.depth < 0) throw ValidationError("depth must be >= 0");
  const Rational rho = params.initial_radius.value_or(metric(sys.space, a, b) / 4);
  if (rho <= Rational(0)) throw ValidationError("initial radius must be positive");

  auto anchored = [&](const Rational& center, int level) {
    Rational r = rho;
    for (int i = 0; i < level; ++i) r = r / 2;
    if (is_circle(sys.space)) return Interval(center - r, center + r);
    const Interval& bounds = interval_bounds(sys.space);
    return Interval(max(bounds.lo, center - r), min(bounds.hi, center + r));
  };

  CoveringStructure s;
  for (int i = 0; i <= params.depth; ++i) {
    s.A.push_back(anchored(a, i));
    s.B.push_back(anchored(b, i));
  }
  if (!covdetail::sets_disjoint(sys.space, s.A[0], s.B[0])) return std::nullopt;

  const CayleyBall ball = ball_enumerate(sys.generators, sys.space, params.radius, params.limits);
  for (int i = 0; i < params.depth; ++i) {
    const Interval &nextA = s.A[static_cast<std::size_t>(i) + 1],
                   &nextB = s.B[static_cast<std::size_t>(i) + 1];
    Interval curA = s.A[static_cast<std::size_t>(i)], curB = s.B[static_cast<std::size_t>(i)];
    bool found = false;
    for (int n = 1; n <= params.horizon && !found; ++n) {
      curA = covdetail::level_image(sys, identity_of(sys.space), 1, curA);
      curB = covdetail::level_image(sys, identity_of(sys.space), 1, curB);
      for (const auto& el : ball.elements()) {
        const Interval imgA = covdetail::level_image(sys, el.realized, 0, curA);
        const Interval imgB = covdetail::level_image(sys, el.realized, 0, curB);
        if (covdetail::set_subset(sys.space, nextA, imgA) &&
            covdetail::set_subset(sys.space, nextB, imgA) &&
            covdetail::set_subset(sys.space, nextA, imgB) &&
            covdetail::set_subset(sys.space, nextB, imgB)) {
          s.times.push_back(n);
          s.words.push_back(el.word);
          found = true;
          break;
        }
      }
    }
    if (!found) return std::nullopt;
  }
  return s;
}

// Symbols 'A'/'B' prescribing which chain the orbit visits level by
// level: position i constrains the level-i set. A code of length
// depth+1 uses every covering relation; shorter codes use a prefix.
inline void validate_code(const CoveringStructure& s, const std::string& code) {
  if (code.empty() || code.size() > static_cast<std::size_t>(s.depth()) + 1)
    throw ValidationError("code length must be in [1, depth+1]");
  for (const char c : code)
    if (c != 'A' && c != 'B') throw ValidationError("code symbols must be 'A' or 'B'");
}

struct PointEnclosure {
  std::string code;
  Interval interval;
  int depth = 0;  // symbols consumed
};

/// Nested-preimage enclosure: pull the deepest prescribed set back level
/// by level (exact PL preimages intersected with the prescribed set,
/// keeping the leftmost component), then re-check the midpoint's forward
/// itinerary. Nonemptiness is guaranteed by the covering relations.
inline PointEnclosure code_to_enclosure(const GSystem& sys, const CoveringStructure& s,
                                        const std::string& code, const BallLimits& limits = {}) {
  if (is_circle(sys.space))
    throw ValidationError("enclosures are defined for interval spaces");
  validate_code(s, code);
  const int levels = static_cast<int>(code.size());
  auto set_at = [&](int i) -> const Interval& {
    return code[static_cast<std::size_t>(i)] == 'A' ? s.A[static_cast<std::size_t>(i)]
                                                    : s.B[static_cast<std::size_t>(i)];
  };

  Interval current = set_at(levels - 1);
  for (int i = levels - 2; i >= 0; --i) {
    const SpaceMap w = realize_word(sys.generators, s.words[static_cast<std::size_t>(i)],
                                    sys.space, limits.compose_breakpoint_cap);
    IntervalSet pulled = preimage(std::get<PLMap>(w), current);
    const PLMap f_step = std::get<PLMap>(dynamics_as_map(sys.space, sys.dynamics,
                                                         limits.compose_breakpoint_cap));
    if (sys.dynamics.kind == Dynamics::Kind::PL)
      for (int t = 0; t < s.times[static_cast<std::size_t>(i)]; ++t)
        pulled = preimage(f_step, pulled);
    pulled = pulled.intersect(set_at(i));
    if (pulled.empty())
      throw InternalError("empty enclosure at level " + std::to_string(i) +
                          "; run verify_covering first");
    current = pulled.components().front();  // leftmost, for determinism
  }

  // forward consistency of the midpoint, exactly
  Rational x = current.midpoint();
  if (!set_at(0).contains(x)) throw InternalError("enclosure midpoint escapes level 0");
  for (int i = 0; i + 1 < levels; ++i) {
    for (int t = 0; t < s.times[static_cast<std::size_t>(i)]; ++t)
      x = dynamics_step(sys.space, sys.dynamics, x);
    const SpaceMap w = realize_word(sys.generators, s.words[static_cast<std::size_t>(i)],
                                    sys.space, limits.compose_breakpoint_cap);
    x = eval(w, x);
    if (!set_at(i + 1).contains(x))
      throw InternalError("forward image escapes prescribed set at level " + std::to_string(i + 1));
  }
  return PointEnclosure{code, current, levels};
}

/// m pairwise-distinct codes of length k that agree on >= k/4 positions
/// and disagree on >= k/4 positions: Hadamard rows cycled to length k.
/// Distinct rows differ on exactly half of each full cycle, so one full
/// cycle (k >= 2^ceil(log2 m)) pins both bounds; column-0 positions are
/// the shared blocks (all codes agree there) and the remaining columns
/// identify. Requires k >= 4 * ceil(log2 m) as well.
inline std::vector<std::string> build_code_family(int m, int k) {
  if (m < 2) throw ValidationError("code family needs m >= 2");
  int bits = 0;
  while ((1 << bits) < m) ++bits;
  if (bits == 0) bits = 1;
  const int cycle = 1 << bits;
  if (k < 4 * bits || k < cycle)
    throw ValidationError("code length too small for family size");

  std::vector<std::string> codes;
  codes.reserve(static_cast<std::size_t>(m));
  for (int row = 0; row < m; ++row) {
    std::string code(static_cast<std::size_t>(k), 'A');
    for (int pos = 0; pos < k; ++pos) {
      const int col = pos % cycle;
      const bool bit = __builtin_popcount(static_cast<unsigned>(row & col)) & 1;
      code[static_cast<std::size_t>(pos)] = bit ? 'B' : 'A';
    }
    codes.push_back(std::move(code));
  }

  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int agree = 0, disagree = 0;
      for (int pos = 0; pos < k; ++pos)
        (codes[static_cast<std::size_t>(i)][static_cast<std::size_t>(pos)] ==
                 codes[static_cast<std::size_t>(j)][static_cast<std::size_t>(pos)]
             ? agree
             : disagree)++;
      if (4 * agree < k || 4 * disagree < k)
        throw ValidationError("code family bounds unattainable at m=" + std::to_string(m) +
                              ", k=" + std::to_string(k));
    }
  return codes;
}

struct ScrambledCertificate {
  std::vector<PointEnclosure> enclosures;
  ScanResult corroboration;
};

/// Enclosures for a code family plus a detector cross-check of their
/// midpoints. The covering facts are the exact certificate; the detector
/// run corroborates. Chain words enter the profiles as hint elements.
inline ScrambledCertificate scrambled_from_covering(const GSystem& sys,
                                                    const CoveringStructure& s, int m,
                                                    ScanParams scan_params = {}) {
  ScrambledCertificate cert;
  const std::vector<std::string> codes = build_code_family(m, s.depth());
  cert.enclosures.reserve(codes.size());
  std::vector<Rational> midpoints;
  for (const auto& code : codes) {
    cert.enclosures.push_back(code_to_enclosure(sys, s, code, scan_params.profile.limits));
    midpoints.push_back(cert.enclosures.back().interval.midpoint());
  }
  Word cumulative;
  for (const Word& w : s.words) {
    Word next = w;
    next.insert(next.end(), cumulative.begin(), cumulative.end());
    cumulative = reduce_word(next);
    scan_params.profile.hint_words.push_back(cumulative);
  }
  cert.corroboration = scan_scrambled(sys, midpoints, scan_params);
  return cert;
}

}  // namespace gly
