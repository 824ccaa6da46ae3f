#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gly/errors.hpp"
#include "gly/group.hpp"
#include "gly/gsystem.hpp"
#include "gly/parallel.hpp"

namespace gly {

struct ProfileParams {
  int horizon = 64;
  int radius = 6;
  std::optional<int> beam;       // beam width; exact scan when absent
  int workers = 1;
  std::vector<Word> hint_words;  // extra candidate elements, always scanned
  BallLimits limits;
};

struct ProfileEntry {
  Rational min_dist, max_dist;
  Word argmin, argmax;
};

// Per-step extrema of d(g f^n(x), g f^n(y)) over a Cayley ball: the
// finite surrogate of the liminf/limsup data in the chaos definition.
// Entries are exact over ball(radius) plus any hint words, or feasible
// bounds when found by beam search (exact == false).
struct DistanceProfile {
  Rational x, y;
  int horizon = 0;
  int radius = 0;
  bool exact = true;
  std::optional<int> beam_width;
  Rational base_distance;  // d(x, y)
  std::vector<ProfileEntry> steps;  // steps[n-1] holds time n

  const ProfileEntry& at(int n) const { return steps[static_cast<std::size_t>(n - 1)]; }
};

/// Exact orbit distances optimized per step. f^n(x), f^n(y) are iterated
/// exactly; each step minimizes and maximizes over the same ball. Steps
/// compute in parallel; results are worker-count independent. A prebuilt
/// ball for the same generators and radius may be shared across pairs.
inline DistanceProfile distance_profile(const GSystem& sys, const Rational& x, const Rational& y,
                                        const ProfileParams& params = {},
                                        const CayleyBall* shared_ball = nullptr) {
  if (params.horizon < 1) throw ValidationError("horizon must be >= 1");
  const Rational xn = normalize_point(sys.space, x), yn = normalize_point(sys.space, y);
  if (xn == yn) throw ValidationError("profile needs two distinct points");

  DistanceProfile profile;
  profile.x = xn;
  profile.y = yn;
  profile.horizon = params.horizon;
  profile.radius = params.radius;
  profile.exact = !params.beam.has_value();
  profile.beam_width = params.beam;
  profile.base_distance = metric(sys.space, xn, yn);
  profile.steps.resize(static_cast<std::size_t>(params.horizon));

  // exact orbits once, serially
  std::vector<Rational> ox(1, xn), oy(1, yn);
  for (int n = 1; n <= params.horizon; ++n) {
    ox.push_back(dynamics_step(sys.space, sys.dynamics, ox.back()));
    oy.push_back(dynamics_step(sys.space, sys.dynamics, oy.back()));
  }

  std::vector<std::pair<Word, SpaceMap>> hints;
  hints.reserve(params.hint_words.size());
  for (const Word& w : params.hint_words) {
    const Word r = reduce_word(w);
    hints.emplace_back(r, realize_word(sys.generators, r, sys.space,
                                       params.limits.compose_breakpoint_cap));
  }

  auto scan_hints = [&](const Rational& p, const Rational& q, Objective obj,
                        DistanceResult& best) {
    for (const auto& [w, m] : hints) {
      const Rational d = metric(sys.space, normalize_point(sys.space, eval(m, p)),
                                normalize_point(sys.space, eval(m, q)));
      if (detail::improves(obj, d, best.value)) best = DistanceResult{w, d, best.exact};
    }
  };

  if (!params.beam) {
    std::optional<CayleyBall> own;
    if (!shared_ball || shared_ball->radius() != params.radius)
      own = ball_enumerate(sys.generators, sys.space, params.radius, params.limits);
    const CayleyBall& ball = own ? *own : *shared_ball;
    parallel_for(static_cast<std::size_t>(params.horizon), params.workers, [&](std::size_t i) {
      const Rational& p = ox[i + 1];
      const Rational& q = oy[i + 1];
      DistanceResult lo = optimize_distance(ball, sys.space, p, q, Objective::Minimize);
      DistanceResult hi = optimize_distance(ball, sys.space, p, q, Objective::Maximize);
      scan_hints(p, q, Objective::Minimize, lo);
      scan_hints(p, q, Objective::Maximize, hi);
      profile.steps[i] = ProfileEntry{lo.value, hi.value, lo.witness, hi.witness};
    });
  } else {
    parallel_for(static_cast<std::size_t>(params.horizon), params.workers, [&](std::size_t i) {
      const Rational& p = ox[i + 1];
      const Rational& q = oy[i + 1];
      DistanceResult lo = optimize_distance_beam(sys.generators, sys.space, params.radius, p, q,
                                                 Objective::Minimize, *params.beam,
                                                 params.limits);
      DistanceResult hi = optimize_distance_beam(sys.generators, sys.space, params.radius, p, q,
                                                 Objective::Maximize, *params.beam,
                                                 params.limits);
      scan_hints(p, q, Objective::Minimize, lo);
      scan_hints(p, q, Objective::Maximize, hi);
      profile.steps[i] = ProfileEntry{lo.value, hi.value, lo.witness, hi.witness};
    });
  }
  return profile;
}

enum class PairClass { GLiYorkeCandidate, ProximalOnly, DistalAtHorizon, Undecided };

inline std::string to_string(PairClass c) {
  switch (c) {
    case PairClass::GLiYorkeCandidate: return "g_li_yorke_candidate";
    case PairClass::ProximalOnly: return "proximal_only";
    case PairClass::DistalAtHorizon: return "distal_at_horizon";
    case PairClass::Undecided: return "undecided";
  }
  return "undecided";
}

struct ClassifyParams {
  Rational eps_prox;
  Rational delta_sep;
  int tail_window = 32;
};

/// Scale-aware defaults: eps = diam/100, delta = diam/4, W = N/2.
inline ClassifyParams default_classify_params(const GSystem& sys, int horizon) {
  const Rational diam = diameter(sys.space);
  return ClassifyParams{diam / 100, diam / 4, horizon / 2};
}

// Finite-horizon verdict for one pair. "Candidate" language is deliberate:
// the verdict certifies distances at specific steps under specific group
// elements, never the infinite-limit property itself.
struct PairVerdict {
  PairClass cls = PairClass::Undecided;
  ClassifyParams params;
  bool exact = true;
  Rational tail_min, tail_max;
  int tail_min_n = 0, tail_max_n = 0;
};

/// Pure function of the profile tail n in (N-W, N]: candidate iff some
/// step dips below eps_prox and some step exceeds delta_sep. Heuristic
/// profiles can certify a candidate (both witnesses are attained) but
/// never a negative verdict, which becomes Undecided.
inline PairVerdict classify_pair(const DistanceProfile& profile, const ClassifyParams& params) {
  if (params.tail_window < 1 || params.tail_window > profile.horizon)
    throw ValidationError("tail window must lie in [1, horizon]");
  if (!(Rational(0) < params.eps_prox && params.eps_prox < params.delta_sep))
    throw ValidationError("need 0 < eps_prox < delta_sep");

  PairVerdict verdict;
  verdict.params = params;
  verdict.exact = profile.exact;
  const int first = profile.horizon - params.tail_window + 1;
  for (int n = first; n <= profile.horizon; ++n) {
    const ProfileEntry& e = profile.at(n);
    if (n == first || e.min_dist < verdict.tail_min) {
      verdict.tail_min = e.min_dist;
      verdict.tail_min_n = n;
    }
    if (n == first || e.max_dist > verdict.tail_max) {
      verdict.tail_max = e.max_dist;
      verdict.tail_max_n = n;
    }
  }
  const bool prox = verdict.tail_min < params.eps_prox;
  const bool sep = verdict.tail_max > params.delta_sep;
  if (prox && sep)
    verdict.cls = PairClass::GLiYorkeCandidate;
  else if (!profile.exact)
    verdict.cls = PairClass::Undecided;
  else if (prox)
    verdict.cls = PairClass::ProximalOnly;
  else
    verdict.cls = PairClass::DistalAtHorizon;
  return verdict;
}

// One explicit choice of group element per step realizing both the
// proximal events (set P) and the separation events (set S), mirroring
// the interleaving of minimizing and maximizing subsequences.
struct WitnessSequence {
  int horizon = 0;
  std::vector<Word> words;         // words[n-1] applies at step n
  std::vector<int> proximal_idx;   // steps with d < eps_prox (P)
  std::vector<int> separated_idx;  // steps with d > delta_sep (S)
  ClassifyParams params;
};

/// Builds the witness by alternating assignments over the tail. P and S
/// stay disjoint; both nonempty or the construction fails.
inline WitnessSequence witness_sequence(const DistanceProfile& profile,
                                        const ClassifyParams& params) {
  const PairVerdict verdict = classify_pair(profile, params);
  if (verdict.cls != PairClass::GLiYorkeCandidate)
    throw ValidationError("witness_sequence needs a g_li_yorke_candidate profile");

  WitnessSequence seq;
  seq.horizon = profile.horizon;
  seq.params = params;
  seq.words.assign(static_cast<std::size_t>(profile.horizon), Word{});

  auto attempt = [&](bool seek_prox_first) {
    seq.proximal_idx.clear();
    seq.separated_idx.clear();
    for (auto& w : seq.words) w.clear();
    bool seek_prox = seek_prox_first;
    for (int n = profile.horizon - params.tail_window + 1; n <= profile.horizon; ++n) {
      const ProfileEntry& e = profile.at(n);
      if (seek_prox && e.min_dist < params.eps_prox) {
        seq.words[static_cast<std::size_t>(n - 1)] = e.argmin;
        seq.proximal_idx.push_back(n);
        seek_prox = false;
      } else if (!seek_prox && e.max_dist > params.delta_sep) {
        seq.words[static_cast<std::size_t>(n - 1)] = e.argmax;
        seq.separated_idx.push_back(n);
        seek_prox = true;
      }
    }
    return !seq.proximal_idx.empty() && !seq.separated_idx.empty();
  };
  if (!attempt(true) && !attempt(false))
    throw ValidationError("witness interleaving failed: a single step carries both events");
  return seq;
}

/// Re-derives every listed distance from scratch and checks it against
/// the thresholds; true iff the sequence proves what it claims.
inline bool verify_witness(const GSystem& sys, const Rational& x, const Rational& y,
                           const WitnessSequence& seq,
                           std::size_t breakpoint_cap = kBreakpointCap) {
  Rational p = normalize_point(sys.space, x), q = normalize_point(sys.space, y);
  std::map<int, Rational> dist;
  for (int n = 1; n <= seq.horizon; ++n) {
    p = dynamics_step(sys.space, sys.dynamics, p);
    q = dynamics_step(sys.space, sys.dynamics, q);
    const SpaceMap g = realize_word(sys.generators, seq.words[static_cast<std::size_t>(n - 1)],
                                    sys.space, breakpoint_cap);
    dist.emplace(n, metric(sys.space, normalize_point(sys.space, eval(g, p)),
                           normalize_point(sys.space, eval(g, q))));
  }
  for (const int n : seq.proximal_idx)
    if (!(dist.at(n) < seq.params.eps_prox)) return false;
  for (const int n : seq.separated_idx)
    if (!(dist.at(n) > seq.params.delta_sep)) return false;
  for (const int n : seq.proximal_idx)
    for (const int m : seq.separated_idx)
      if (n == m) return false;
  return !seq.proximal_idx.empty() && !seq.separated_idx.empty();
}

struct ScanParams {
  ProfileParams profile;
  std::optional<ClassifyParams> classify;  // defaults from the system when absent
};

struct PairCell {
  std::size_t i = 0, j = 0;  // sample indices, i < j
  PairVerdict verdict;
};

struct ScanResult {
  std::vector<Rational> samples;
  std::vector<PairCell> pairs;        // row-major over i < j
  std::vector<std::size_t> clique;    // greedy pairwise-candidate set
  ClassifyParams params;
  bool exact = true;
};

/// Classifies all unordered sample pairs and extracts a greedy clique of
/// pairwise candidates (deterministic, by sample index).
inline ScanResult scan_scrambled(const GSystem& sys, const std::vector<Rational>& samples,
                                 const ScanParams& params = {}) {
  if (samples.size() < 2) throw ValidationError("scan needs at least two samples");
  ScanResult result;
  result.samples = samples;
  result.params =
      params.classify ? *params.classify : default_classify_params(sys, params.profile.horizon);

  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      result.pairs.push_back(PairCell{i, j, {}});

  std::optional<CayleyBall> ball;
  if (!params.profile.beam)
    ball = ball_enumerate(sys.generators, sys.space, params.profile.radius,
                          params.profile.limits);
  parallel_for(result.pairs.size(), params.profile.workers, [&](std::size_t k) {
    PairCell& cell = result.pairs[k];
    ProfileParams p = params.profile;
    p.workers = 1;  // pair-level parallelism only
    const DistanceProfile profile =
        distance_profile(sys, samples[cell.i], samples[cell.j], p, ball ? &*ball : nullptr);
    cell.verdict = classify_pair(profile, result.params);
  });

  for (const auto& cell : result.pairs) result.exact = result.exact && cell.verdict.exact;

  auto candidate = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    for (const auto& cell : result.pairs)
      if (cell.i == i && cell.j == j) return cell.verdict.cls == PairClass::GLiYorkeCandidate;
    return false;
  };
  for (std::size_t i = 0; i < samples.size(); ++i) {
    bool ok = true;
    for (const std::size_t j : result.clique) ok = ok && candidate(j, i);
    if (ok) result.clique.push_back(i);
  }
  return result;
}

/// The residue class r mod n hit most often by the index sequence, with
/// the congruent subsequence. Ties break toward the smallest r.
inline std::pair<long, std::vector<long>> residue_split(const std::vector<long>& indices,
                                                        long modulus) {
  if (indices.empty()) throw ValidationError("residue_split needs a nonempty sequence");
  if (modulus < 1) throw ValidationError("modulus must be >= 1");
  std::vector<std::size_t> count(static_cast<std::size_t>(modulus), 0);
  for (const long v : indices) ++count[static_cast<std::size_t>(((v % modulus) + modulus) % modulus)];
  long best = 0;
  for (long r = 1; r < modulus; ++r)
    if (count[static_cast<std::size_t>(r)] > count[static_cast<std::size_t>(best)]) best = r;
  std::vector<long> sub;
  for (const long v : indices)
    if (((v % modulus) + modulus) % modulus == best) sub.push_back(v);
  return {best, sub};
}

// Comparison of candidate status between f and an exact power of f.
struct LiftReport {
  int power = 1;
  EquivarianceReport equivariance;  // hypothesis of the iteration theorem
  DistanceProfile base_profile, power_profile;
  PairVerdict base_verdict, power_verdict;
  bool preserved = false;
};

/// Profiles the pair under f and under f^power at the same parameters and
/// reports whether candidate status carries over. When f is not
/// equivariant the report carries that caveat prominently: the iteration
/// theorem's hypothesis fails and no transfer is promised.
inline LiftReport lift_to_power(const GSystem& sys, const Rational& x, const Rational& y,
                                int power, const ProfileParams& profile_params,
                                const std::optional<ClassifyParams>& classify_params = {}) {
  if (power < 1) throw ValidationError("power must be >= 1");
  LiftReport report;
  report.power = power;
  report.equivariance = check_equivariance(sys, profile_params.limits.compose_breakpoint_cap);
  const ClassifyParams cls =
      classify_params ? *classify_params : default_classify_params(sys, profile_params.horizon);

  report.base_profile = distance_profile(sys, x, y, profile_params);
  report.base_verdict = classify_pair(report.base_profile, cls);

  GSystem powered = sys;
  powered.dynamics = sys.dynamics.powered(power);
  report.power_profile = distance_profile(powered, x, y, profile_params);
  report.power_verdict = classify_pair(report.power_profile, cls);

  report.preserved = report.base_verdict.cls != PairClass::GLiYorkeCandidate ||
                     report.power_verdict.cls == PairClass::GLiYorkeCandidate;
  return report;
}

}  // namespace gly
