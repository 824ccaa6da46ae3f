#include <gtest/gtest.h>

#include "gly/gsystem.hpp"
#include "gly/presets.hpp"

using namespace gly;

namespace {
Rational R(long n, long d = 1) { return Rational(n, d); }
}

TEST(Validate, KindsMustMatchSpace) {
  GSystem bad;
  bad.space = IntervalSpace{Interval(R(0), R(1))};
  bad.dynamics = Dynamics::rotation(R(1, 3));
  EXPECT_THROW(validate_system(bad), ValidationError);

  GSystem bad2;
  bad2.space = CircleSpace{};
  bad2.dynamics = Dynamics::identity();
  bad2.generators.add("h", identity_map(Interval(R(0), R(1))));
  EXPECT_THROW(validate_system(bad2), ValidationError);

  for (const auto& name : preset_names()) EXPECT_NO_THROW(validate_system(make_preset(name)));
}

TEST(Action, PresetsPass) {
  for (const auto& name : preset_names()) {
    const ActionReport r = check_action(make_preset(name));
    EXPECT_TRUE(r.pass) << name << ": " << (r.failures.empty() ? "" : r.failures[0]);
  }
}

TEST(Action, EmptyGeneratorSetPasses) {
  EXPECT_TRUE(check_action(make_preset("tent")).pass);
}

TEST(Action, NonSurjectiveGeneratorFailsWithWitness) {
  GSystem sys;
  const Interval box(R(-2), R(2));
  sys.space = IntervalSpace{box};
  sys.dynamics = Dynamics::identity();
  // strictly monotone but only onto [-1, 1]
  sys.generators.add_with_inverse(
      "squash", PLMap({{R(-2), R(-1)}, {R(2), R(1)}}, box),
      PLMap({{R(-2), R(-2)}, {R(-1), R(-2)}, {R(1), R(2)}, {R(2), R(2)}}, box));
  const ActionReport r = check_action(sys);
  EXPECT_FALSE(r.pass);
  ASSERT_FALSE(r.failures.empty());
  EXPECT_NE(r.failures[0].find("squash"), std::string::npos);
  EXPECT_NE(r.failures[0].find("onto"), std::string::npos);
}

TEST(Equivariance, Ex33FailsWithExactWitness) {
  const GSystem ex33 = make_preset("ex33");
  const EquivarianceReport r = check_equivariance(ex33);
  ASSERT_FALSE(r.equivariant);
  EXPECT_EQ(*r.generator, "g1");
  EXPECT_EQ(*r.witness_x, R(1, 2));
  EXPECT_EQ(*r.f_g_x, R(-1, 2));  // f(g1(1/2))
  EXPECT_EQ(*r.g_f_x, R(-1));     // g1(f(1/2))
}

TEST(Equivariance, RotationsCommute) {
  EXPECT_TRUE(check_equivariance(make_preset("ex62")).equivariant);
}

TEST(Equivariance, OddMapCommutesWithSignFlip) {
  const GSystem zig = make_preset("zigzag-z2");
  EXPECT_TRUE(check_equivariance(zig).equivariant);
  // spot-check the identity f(sigma(x)) = sigma(f(x)) pointwise
  const PLMap& f = *zig.dynamics.pl;
  const PLMap sigma = std::get<PLMap>(zig.generators[0].map);
  for (long k = -16; k <= 16; ++k) {
    const Rational x(k, 16);
    EXPECT_EQ(f.eval(sigma.eval(x)), sigma.eval(f.eval(x)));
  }
}

TEST(Transitivity, TentPassesOnSixteenthGrid) {
  TransitivityParams params;
  params.grid_delta = R(1, 16);
  params.horizon = 16;
  params.radius = 0;
  const TransitivityReport r = check_g_transitivity(make_preset("tent"), params);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.cell_count, 16u);
  // tent images of any cell cover [0,1] within log2(1/delta)+1 steps
  for (const auto& row : r.matrix)
    for (const auto& hit : row) {
      ASSERT_TRUE(hit.has_value());
      EXPECT_LE(hit->steps, 5);
    }
}

TEST(Transitivity, WholeSpaceCellIsImmediate) {
  TransitivityParams params;
  params.grid_delta = R(1);
  params.horizon = 4;
  params.radius = 0;
  const TransitivityReport r = check_g_transitivity(make_preset("tent"), params);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.cell_count, 1u);
  EXPECT_EQ(r.matrix[0][0]->steps, 1);
  EXPECT_TRUE(r.matrix[0][0]->word.empty());
}

TEST(Transitivity, RationalRotationFailsOnFineGrid) {
  const GSystem coarse = make_preset("ex62", 0);  // angle 34/55
  TransitivityParams params;
  params.grid_delta = R(1, 55);
  params.horizon = 4;
  params.radius = 3;  // far fewer than 55 reachable shifts
  const TransitivityReport r = check_g_transitivity(coarse, params);
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.unreached.has_value());
  const auto [i, j] = *r.unreached;
  EXPECT_FALSE(r.matrix[i][j].has_value());
}

TEST(Transitivity, MonotoneInHorizonAndRadius) {
  const GSystem zig = make_preset("zigzag-z2");
  TransitivityParams params;
  params.grid_delta = R(1, 4);
  params.horizon = 6;
  params.radius = 0;
  const TransitivityReport base = check_g_transitivity(zig, params);
  EXPECT_TRUE(base.pass);
  params.horizon = 10;
  params.radius = 1;
  const TransitivityReport wider = check_g_transitivity(zig, params);
  EXPECT_TRUE(wider.pass);
  for (std::size_t i = 0; i < base.matrix.size(); ++i)
    for (std::size_t j = 0; j < base.matrix.size(); ++j)
      if (base.matrix[i][j]) EXPECT_LE(wider.matrix[i][j]->steps, base.matrix[i][j]->steps);
}

TEST(Transitivity, BadGridRejected) {
  TransitivityParams params;
  params.grid_delta = R(1, 3);  // does not divide length 1... it does; use 2/3
  params.grid_delta = R(2, 3);
  EXPECT_THROW(check_g_transitivity(make_preset("tent"), params), ValidationError);
}

TEST(TransitivePoint, GoldenRotationIsDenseAtModestRadius) {
  const GSystem ex62 = make_preset("ex62");
  const auto r = find_g_transitive_point(ex62, R(1, 100), 1, 128, 3);
  ASSERT_TRUE(r.has_value());
  EXPECT_LE(r->max_gap, R(2, 100));
}

TEST(TransitivePoint, RationalRotationHasGaps) {
  const GSystem coarse = make_preset("ex62", 0);  // 34/55: gaps 1/55
  EXPECT_FALSE(find_g_transitive_point(coarse, R(1, 200), 4, 60, 3).has_value());
}

TEST(TransitivePoint, FullDiameterEpsAcceptsAnything) {
  const GSystem tent = make_preset("tent");
  const auto r = find_g_transitive_point(tent, R(1), 1, 0, 3);
  ASSERT_TRUE(r.has_value());
}

TEST(Recurrence, TentFixedPointRecursImmediately) {
  const RecurrenceResult r = check_g_recurrent(make_preset("tent"), R(2, 3), R(1, 100), 8, 0);
  EXPECT_TRUE(r.recurrent);
  EXPECT_EQ(r.best_n, 1);
  EXPECT_TRUE(r.best_word.empty());
  EXPECT_EQ(r.best_distance, R(0));
}

TEST(Recurrence, RotationOrbitReturns) {
  const RecurrenceResult r = check_g_recurrent(make_preset("ex62"), R(1, 3), R(1, 100), 2, 89);
  EXPECT_TRUE(r.recurrent);
}

TEST(Recurrence, ContractionEscapesAtTightEps) {
  GSystem contraction;
  const Interval box(R(0), R(1));
  contraction.space = IntervalSpace{box};
  contraction.dynamics = Dynamics::from_pl(PLMap({{R(0), R(0)}, {R(1), R(1, 2)}}, box));
  const RecurrenceResult r = check_g_recurrent(contraction, R(1), R(1, 4), 3, 0);
  EXPECT_FALSE(r.recurrent);
  EXPECT_EQ(r.best_distance, R(1, 2));  // d(f(1), 1) = 1/2 is the closest return
}

TEST(CommonFixed, ZigzagHasOnlyTheOrigin) {
  const IntervalSet fix = check_common_fixed_point(make_preset("zigzag-z2"));
  ASSERT_EQ(fix.size(), 1u);
  EXPECT_EQ(fix.components()[0], Interval(R(0), R(0)));
}

TEST(CommonFixed, RotationHasNoFixedPoint) {
  EXPECT_TRUE(check_common_fixed_point(make_preset("ex62")).empty());
}

TEST(CommonFixed, TrivialGroupReducesToDynamicsFixedSet) {
  const IntervalSet fix = check_common_fixed_point(make_preset("tent"));
  ASSERT_EQ(fix.size(), 2u);
  EXPECT_EQ(fix.components()[0].lo, R(0));
  EXPECT_EQ(fix.components()[1].lo, R(2, 3));
}

TEST(CommonFixed, Ex42GeneratorsShareNoFixedPoint) {
  EXPECT_TRUE(check_common_fixed_point(make_preset("ex42")).empty());
}

TEST(CommonFixed, FixedByEveryBallElement) {
  const GSystem zig = make_preset("zigzag-z2");
  const IntervalSet fix = check_common_fixed_point(zig);
  const CayleyBall ball = ball_enumerate(zig.generators, zig.space, 4);
  for (const auto& comp : fix.components())
    for (const auto& el : ball.elements())
      EXPECT_EQ(eval(el.realized, comp.lo), comp.lo);
}

TEST(PeriodicCommon, TentTwoCycleFound) {
  const auto pts = check_periodic_common_point(make_preset("tent"), 2);
  ASSERT_EQ(pts.size(), 4u);
  EXPECT_EQ(pts[0].component.lo, R(0));
  EXPECT_EQ(pts[0].period, 1);
  EXPECT_EQ(pts[1].component.lo, R(2, 5));
  EXPECT_EQ(pts[1].period, 2);
  EXPECT_EQ(pts[2].component.lo, R(2, 3));
  EXPECT_EQ(pts[2].period, 1);
  EXPECT_EQ(pts[3].component.lo, R(4, 5));
  EXPECT_EQ(pts[3].period, 2);
}

TEST(PeriodicCommon, ZigzagOriginOnly) {
  const auto pts = check_periodic_common_point(make_preset("zigzag-z2"), 1);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].component, Interval(R(0), R(0)));
  EXPECT_EQ(pts[0].period, 1);
}

TEST(PeriodicCommon, IdentityDynamicsYieldsGeneratorFixedPoints) {
  GSystem sys;
  const Interval box(R(-1), R(1));
  sys.space = IntervalSpace{box};
  sys.dynamics = Dynamics::identity();
  sys.generators.add("sigma", PLMap({{R(-1), R(1)}, {R(1), R(-1)}}, box));
  const auto pts = check_periodic_common_point(sys, 3);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].component, Interval(R(0), R(0)));
  EXPECT_EQ(pts[0].period, 1);
}

TEST(Metric, CircleDistanceCapsAtHalf) {
  const PhaseSpace circle = CircleSpace{};
  EXPECT_EQ(metric(circle, R(0), R(3, 4)), R(1, 4));
  EXPECT_EQ(metric(circle, R(1, 8), R(7, 8)), R(1, 4));
  EXPECT_EQ(metric(circle, R(0), R(1, 2)), R(1, 2));
  EXPECT_EQ(metric(circle, R(-1, 4), R(1, 4)), R(1, 2));  // points taken mod 1
}
