#pragma once

#include <string>
#include <vector>

#include "gly/errors.hpp"
#include "gly/gsystem.hpp"

namespace gly {

/// Built-in example systems. These are the single source of truth for
/// their coefficients; tests and the CLI reference them by name.
inline std::vector<std::string> preset_names() {
  return {"ex33", "ex42", "ex62", "tent", "zigzag-z2"};
}

/// Rotation angles shipped with ex62, coarse to fine (ratios of
/// consecutive Fibonacci numbers; density improves with the index).
inline std::vector<Rational> ex62_angles() {
  return {Rational(34, 55), Rational(610, 987), Rational(6765, 10946)};
}

inline GSystem make_preset(const std::string& name, int angle_index = 2) {
  auto R = [](long n, long d = 1) { return Rational(n, d); };

  if (name == "ex33") {
    // absolute-value flip with asymmetric PL generators on [-2, 2]
    const Interval box(R(-2), R(2));
    GSystem sys;
    sys.name = name;
    sys.space = IntervalSpace{box};
    sys.dynamics = Dynamics::from_pl(PLMap({{R(-2), R(-2)}, {R(0), R(0)}, {R(2), R(-2)}}, box));
    sys.generators.add("g1", PLMap({{R(-2), R(-2)}, {R(-1, 2), R(-1)}, {R(0), R(0)}, {R(2), R(2)}},
                                   box));
    sys.generators.add("g2", PLMap({{R(-2), R(2)}, {R(-1, 2), R(-1)}, {R(2), R(-2)}}, box));
    sys.generators.add("phi", identity_map(box));
    return sys;
  }

  if (name == "ex42") {
    // identity dynamics; the group alone produces proximal/separated pairs
    const Interval box(R(-2), R(2));
    GSystem sys;
    sys.name = name;
    sys.space = IntervalSpace{box};
    sys.dynamics = Dynamics::identity();
    sys.generators.add("g1", PLMap({{R(-2), R(-2)}, {R(0), R(0)}, {R(1, 2), R(1)}, {R(2), R(2)}},
                                   box));
    sys.generators.add("g2", PLMap({{R(-2), R(2)}, {R(1, 2), R(1)}, {R(2), R(-2)}}, box));
    sys.generators.add("f", identity_map(box));
    return sys;
  }

  if (name == "ex62") {
    // circle with identity dynamics and one irrational-like rotation
    const auto angles = ex62_angles();
    if (angle_index < 0 || angle_index >= static_cast<int>(angles.size()))
      throw ValidationError("ex62 angle index out of range");
    GSystem sys;
    sys.name = name;
    sys.space = CircleSpace{};
    sys.dynamics = Dynamics::identity();
    sys.generators.add("g", CircleRotation(angles[static_cast<std::size_t>(angle_index)]));
    return sys;
  }

  if (name == "tent") {
    const Interval box(R(0), R(1));
    GSystem sys;
    sys.name = name;
    sys.space = IntervalSpace{box};
    sys.dynamics = Dynamics::from_pl(PLMap({{R(0), R(0)}, {R(1, 2), R(1)}, {R(1), R(0)}}, box));
    return sys;  // trivial group
  }

  if (name == "zigzag-z2") {
    // odd expanding zigzag with the sign involution as symmetry
    const Interval box(R(-1), R(1));
    GSystem sys;
    sys.name = name;
    sys.space = IntervalSpace{box};
    sys.dynamics = Dynamics::from_pl(
        PLMap({{R(-1), R(0)}, {R(-1, 2), R(1)}, {R(1, 2), R(-1)}, {R(1), R(0)}}, box));
    sys.generators.add("sigma", PLMap({{R(-1), R(1)}, {R(1), R(-1)}}, box));
    return sys;
  }

  throw ValidationError("unknown preset \"" + name + "\"");
}

}  // namespace gly
