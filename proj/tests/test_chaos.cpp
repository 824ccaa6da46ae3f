#include <gtest/gtest.h>

#include "gly/chaos.hpp"
#include "gly/presets.hpp"

using namespace gly;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

ProfileParams quick(int horizon, int radius) {
  ProfileParams p;
  p.horizon = horizon;
  p.radius = radius;
  return p;
}

ClassifyParams thresholds(long en, long ed, long dn, long dd, int window) {
  return ClassifyParams{Rational(en, ed), Rational(dn, dd), window};
}

}  // namespace

TEST(Profile, IsometriesFreezeEveryDistance) {
  const GSystem ex62 = make_preset("ex62");
  for (const auto& pair : {std::pair{R(1, 4), R(2, 3)}, {R(0), R(1, 7)}, {R(1, 3), R(5, 6)}}) {
    const DistanceProfile p = distance_profile(ex62, pair.first, pair.second, quick(16, 4));
    const Rational d = metric(ex62.space, pair.first, pair.second);
    EXPECT_EQ(p.base_distance, d);
    for (int n = 1; n <= p.horizon; ++n) {
      EXPECT_EQ(p.at(n).min_dist, d);
      EXPECT_EQ(p.at(n).max_dist, d);
    }
  }
}

TEST(Profile, TrivialGroupFollowsTheOrbit) {
  const GSystem tent = make_preset("tent");
  const Rational x = R(1, 7), y = R(2, 7);
  const DistanceProfile p = distance_profile(tent, x, y, quick(12, 5));
  Rational fx = x, fy = y;
  for (int n = 1; n <= 12; ++n) {
    fx = tent.dynamics.pl->eval(fx);
    fy = tent.dynamics.pl->eval(fy);
    EXPECT_EQ(p.at(n).min_dist, (fx - fy).abs());
    EXPECT_EQ(p.at(n).max_dist, (fx - fy).abs());
    EXPECT_TRUE(p.at(n).argmin.empty());
    EXPECT_TRUE(p.at(n).argmax.empty());
  }
}

TEST(Profile, Ex42ShrinksAndStretches) {
  // identity dynamics: per-step extrema are n-independent, so a short
  // horizon exercises the whole statement
  const GSystem ex42 = make_preset("ex42");
  const DistanceProfile p = distance_profile(ex42, R(1, 4), R(3, 4), quick(2, 6));
  EXPECT_EQ(p.at(1).min_dist, R(1, 160));  // frozen from the exhaustive scan
  EXPECT_LT(p.at(1).min_dist, R(1, 10));
  EXPECT_GE(p.at(1).max_dist, R(1, 2));
  EXPECT_EQ(p.at(1).min_dist, p.at(2).min_dist);
  EXPECT_EQ(p.at(1).max_dist, p.at(2).max_dist);
}

TEST(Profile, MonotoneInRadius) {
  const GSystem ex42 = make_preset("ex42");
  Rational prev_min, prev_max;
  for (int radius = 0; radius <= 4; ++radius) {
    const DistanceProfile p = distance_profile(ex42, R(1, 9), R(5, 9), quick(2, radius));
    if (radius > 0) {
      EXPECT_LE(p.at(1).min_dist, prev_min);
      EXPECT_GE(p.at(1).max_dist, prev_max);
    }
    prev_min = p.at(1).min_dist;
    prev_max = p.at(1).max_dist;
  }
}

TEST(Profile, WitnessWordsReproduceValues) {
  const GSystem ex42 = make_preset("ex42");
  const DistanceProfile p = distance_profile(ex42, R(1, 4), R(3, 4), quick(2, 5));
  const SpaceMap gmin = realize_word(ex42.generators, p.at(1).argmin, ex42.space);
  const SpaceMap gmax = realize_word(ex42.generators, p.at(1).argmax, ex42.space);
  EXPECT_EQ(metric(ex42.space, eval(gmin, R(1, 4)), eval(gmin, R(3, 4))), p.at(1).min_dist);
  EXPECT_EQ(metric(ex42.space, eval(gmax, R(1, 4)), eval(gmax, R(3, 4))), p.at(1).max_dist);
}

TEST(Profile, IdentityBoundsHold) {
  const GSystem zig = make_preset("zigzag-z2");
  const Rational x = R(-7, 101), y = R(3, 101);
  const DistanceProfile p = distance_profile(zig, x, y, quick(20, 2));
  Rational fx = x, fy = y;
  for (int n = 1; n <= 20; ++n) {
    fx = zig.dynamics.pl->eval(fx);
    fy = zig.dynamics.pl->eval(fy);
    EXPECT_LE(p.at(n).min_dist, (fx - fy).abs());
    EXPECT_GE(p.at(n).max_dist, (fx - fy).abs());
  }
}

TEST(Profile, RejectsCoincidentPoints) {
  EXPECT_THROW(distance_profile(make_preset("tent"), R(1, 3), R(1, 3), quick(4, 0)),
               ValidationError);
}

TEST(Classify, Ex42PairIsCandidate) {
  const GSystem ex42 = make_preset("ex42");
  const DistanceProfile p = distance_profile(ex42, R(1, 4), R(3, 4), quick(32, 6));
  const PairVerdict v = classify_pair(p, thresholds(1, 10, 2, 5, 16));
  EXPECT_EQ(v.cls, PairClass::GLiYorkeCandidate);
  EXPECT_TRUE(v.exact);
  EXPECT_LT(v.tail_min, R(1, 10));
  EXPECT_GT(v.tail_max, R(2, 5));
}

TEST(Classify, IsometryNeverProducesCandidates) {
  const GSystem ex62 = make_preset("ex62");
  // d = 1/4: below delta_sep -> separation impossible; proximality needs eps > 1/4
  const DistanceProfile p = distance_profile(ex62, R(0), R(1, 4), quick(16, 3));
  const PairVerdict tight = classify_pair(p, thresholds(1, 100, 3, 8, 8));
  EXPECT_EQ(tight.cls, PairClass::DistalAtHorizon);
  const PairVerdict loose = classify_pair(p, thresholds(1, 3, 2, 5, 8));
  EXPECT_EQ(loose.cls, PairClass::ProximalOnly);
}

TEST(Classify, HeuristicNegativesAreUndecided) {
  const GSystem ex62 = make_preset("ex62");
  ProfileParams params = quick(8, 2);
  params.beam = 4;
  const DistanceProfile p = distance_profile(ex62, R(0), R(1, 4), params);
  EXPECT_FALSE(p.exact);
  const PairVerdict v = classify_pair(p, thresholds(1, 100, 3, 8, 4));
  EXPECT_EQ(v.cls, PairClass::Undecided);
}

TEST(Classify, ParameterValidation) {
  const GSystem tent = make_preset("tent");
  const DistanceProfile p = distance_profile(tent, R(1, 7), R(2, 7), quick(8, 0));
  EXPECT_THROW(classify_pair(p, thresholds(1, 2, 1, 4, 4)), ValidationError);   // eps >= delta
  EXPECT_THROW(classify_pair(p, thresholds(1, 10, 1, 4, 9)), ValidationError);  // window > N
}

TEST(Witness, AlternationSplitsEvenOdd) {
  // every tail step of an ex42 profile carries both events, so the
  // alternation rule assigns P to the even tail positions and S to odd
  const GSystem ex42 = make_preset("ex42");
  const DistanceProfile p = distance_profile(ex42, R(1, 4), R(3, 4), quick(8, 6));
  const ClassifyParams cls = thresholds(1, 10, 2, 5, 4);
  const WitnessSequence w = witness_sequence(p, cls);
  EXPECT_EQ(w.proximal_idx, (std::vector<int>{5, 7}));
  EXPECT_EQ(w.separated_idx, (std::vector<int>{6, 8}));
  EXPECT_TRUE(verify_witness(ex42, R(1, 4), R(3, 4), w));
}

TEST(Witness, NonCandidateRejected) {
  const GSystem ex62 = make_preset("ex62");
  const DistanceProfile p = distance_profile(ex62, R(0), R(1, 4), quick(8, 2));
  EXPECT_THROW(witness_sequence(p, thresholds(1, 100, 3, 8, 4)), ValidationError);
}

TEST(Witness, ExistsIffThresholdsMet) {
  // the interleaving equivalence, brute-forced over several parameter sets
  const GSystem ex42 = make_preset("ex42");
  const GSystem ex62 = make_preset("ex62");
  const DistanceProfile cand = distance_profile(ex42, R(1, 4), R(3, 4), quick(12, 4));
  const DistanceProfile flat = distance_profile(ex62, R(0), R(1, 4), quick(12, 4));
  const std::vector<ClassifyParams> grid = {
      thresholds(1, 10, 2, 5, 6), thresholds(1, 100, 1, 2, 6), thresholds(1, 5, 3, 10, 4),
      thresholds(26, 100, 27, 100, 6)};
  for (const DistanceProfile* p : {&cand, &flat})
    for (const ClassifyParams& c : grid) {
      const bool candidate = classify_pair(*p, c).cls == PairClass::GLiYorkeCandidate;
      bool witness_ok = true;
      try {
        const WitnessSequence w = witness_sequence(*p, c);
        witness_ok = !w.proximal_idx.empty() && !w.separated_idx.empty();
      } catch (const ValidationError&) {
        witness_ok = false;
      }
      EXPECT_EQ(candidate, witness_ok);
    }
}

TEST(Scan, IsometrySamplesYieldSingletonClique) {
  const GSystem ex62 = make_preset("ex62");
  ScanParams params;
  params.profile = quick(8, 3);
  params.classify = thresholds(1, 100, 1, 4, 4);
  const ScanResult r = scan_scrambled(ex62, {R(0), R(1, 5), R(2, 5), R(3, 5)}, params);
  for (const auto& cell : r.pairs)
    EXPECT_NE(cell.verdict.cls, PairClass::GLiYorkeCandidate);
  EXPECT_EQ(r.clique.size(), 1u);
}

TEST(Scan, SinglePairCandidate) {
  const GSystem ex42 = make_preset("ex42");
  ScanParams params;
  params.profile = quick(4, 6);
  params.classify = thresholds(1, 10, 2, 5, 2);
  const ScanResult r = scan_scrambled(ex42, {R(1, 4), R(3, 4)}, params);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_EQ(r.pairs[0].verdict.cls, PairClass::GLiYorkeCandidate);
  EXPECT_EQ(r.clique, (std::vector<std::size_t>{0, 1}));
}

TEST(Scan, Ex42EquispacedCliqueIsLarge) {
  const GSystem ex42 = make_preset("ex42");
  std::vector<Rational> samples;
  for (long i = 1; i <= 8; ++i) samples.push_back(R(i, 9));
  ScanParams params;
  params.profile = quick(2, 6);  // identity dynamics: extrema are n-independent
  params.classify = thresholds(1, 10, 2, 5, 1);
  const ScanResult r = scan_scrambled(ex42, samples, params);
  EXPECT_EQ(r.clique.size(), 8u);
  for (const auto& cell : r.pairs)
    EXPECT_EQ(cell.verdict.cls, PairClass::GLiYorkeCandidate);
}

TEST(Scan, TrivialGroupReductionAndExtension) {
  // classical candidate stays a candidate when generators arrive
  const GSystem tent = make_preset("tent");
  const Rational x = R(1, 1023), y = R(3, 1023);
  ScanParams params;
  params.profile = quick(64, 4);
  const ScanResult classical = scan_scrambled(tent, {x, y}, params);
  ASSERT_EQ(classical.pairs.size(), 1u);
  EXPECT_EQ(classical.pairs[0].verdict.cls, PairClass::GLiYorkeCandidate);

  GSystem enriched = tent;
  enriched.generators.add("h", PLMap({{R(0), R(0)}, {R(1, 2), R(1, 4)}, {R(1), R(1)}},
                                     Interval(R(0), R(1))));
  const ScanResult grouped = scan_scrambled(enriched, {x, y}, params);
  EXPECT_EQ(grouped.pairs[0].verdict.cls, PairClass::GLiYorkeCandidate);
}

TEST(ResidueSplit, UniformCountsTieToSmallestResidue) {
  std::vector<long> upto100;
  for (long i = 1; i <= 100; ++i) upto100.push_back(i);
  const auto [r, sub] = residue_split(upto100, 4);
  EXPECT_EQ(r, 0);  // all four classes tie at 25; the smallest residue wins
  EXPECT_EQ(sub.size(), 25u);
  EXPECT_EQ(sub.front(), 4);
  EXPECT_EQ(sub.back(), 100);
}

TEST(ResidueSplit, ConstantResidue) {
  const auto [r, sub] = residue_split({3, 7, 11, 15}, 4);
  EXPECT_EQ(r, 3);
  EXPECT_EQ(sub, (std::vector<long>{3, 7, 11, 15}));
}

TEST(ResidueSplit, PrimesUpToHundred) {
  std::vector<long> primes;
  for (long n = 2; n <= 100; ++n) {
    bool prime = true;
    for (long d = 2; d * d <= n; ++d)
      if (n % d == 0) prime = false;
    if (prime) primes.push_back(n);
  }
  const auto [r, sub] = residue_split(primes, 4);
  EXPECT_EQ(r, 3);  // 13 primes = 3 mod 4 against 11 primes = 1 mod 4
  EXPECT_EQ(sub.size(), 13u);
}

TEST(ResidueSplit, Validation) {
  EXPECT_THROW(residue_split({}, 4), ValidationError);
  EXPECT_THROW(residue_split({1}, 0), ValidationError);
}

TEST(Lift, TentCandidateSurvivesSquaringAndCubing) {
  const GSystem tent = make_preset("tent");
  const ProfileParams params = quick(64, 0);
  for (const int power : {2, 3}) {
    const LiftReport r = lift_to_power(tent, R(1, 1023), R(3, 1023), power, params);
    EXPECT_TRUE(r.equivariance.equivariant);  // trivial group
    EXPECT_EQ(r.base_verdict.cls, PairClass::GLiYorkeCandidate);
    EXPECT_EQ(r.power_verdict.cls, PairClass::GLiYorkeCandidate);
    EXPECT_TRUE(r.preserved);
  }
}

TEST(Lift, IsometryNeverLifts) {
  const GSystem ex62 = make_preset("ex62");
  const LiftReport r = lift_to_power(ex62, R(0), R(1, 4), 3, quick(16, 2));
  EXPECT_NE(r.base_verdict.cls, PairClass::GLiYorkeCandidate);
  EXPECT_NE(r.power_verdict.cls, PairClass::GLiYorkeCandidate);
  EXPECT_TRUE(r.preserved);
}

TEST(Lift, Ex33PowersShareOneProfile) {
  // f o f = f pointwise, so the powered run reproduces the base run; the
  // report records the equivariance caveat rather than any asymmetry
  const GSystem ex33 = make_preset("ex33");
  const LiftReport r = lift_to_power(ex33, R(1, 3), R(2, 3), 2, quick(12, 2));
  EXPECT_FALSE(r.equivariance.equivariant);
  ASSERT_EQ(r.base_profile.steps.size(), r.power_profile.steps.size());
  for (int n = 1; n <= r.base_profile.horizon; ++n) {
    EXPECT_EQ(r.base_profile.at(n).min_dist, r.power_profile.at(n).min_dist);
    EXPECT_EQ(r.base_profile.at(n).max_dist, r.power_profile.at(n).max_dist);
  }
}
