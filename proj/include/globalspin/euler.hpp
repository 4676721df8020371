#pragma once

#include <array>
#include <vector>

#include "globalspin/synthesis.hpp"

namespace globalspin {

/// Per-axis device constants a_k of the configuration driving that axis,
/// indexed by Axis. Empty entries mean the axis cannot be driven.
using AxisConstants = std::array<std::vector<double>, 3>;

/// U = e^{i delta} Rz(gamma) Rx(beta) Rz(alpha), Rz(a) = exp(-i a sigma^z / 2).
/// beta in [0, pi]; alpha and gamma in (-pi, pi].
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

/// Throws Error{NotUnitary2x2}.
EulerAngles euler_zxz(const CMatrix& u);

/// One rotation block exp(-i angle S_i^axis), axis z or x, from the
/// 12-slot rotation template with adjacent field pulses fused: 11 steps,
/// 4 exchanges, 7 field pulses. Angles follow the device constants.
/// A zero angle gives an empty circuit. Throws Error{UnrealizableAngles}
/// for a y axis or equal constants on the pair.
Circuit rotation_block(const RegisterSpec& reg, int i, int j, Axis axis, double angle,
                       const AxisConstants& constants);

/// Euler compilation of a single-spin gate on spin i, using j as the
/// exchange partner: at most three rotation blocks (21 field pulses),
/// equal to the target up to global phase. Throws Error{NotUnitary2x2}.
Circuit su2_compile(const CMatrix& target, int i, int j, const AxisConstants& constants,
                    const RegisterSpec& reg);

}  // namespace globalspin
