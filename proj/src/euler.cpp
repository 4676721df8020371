#include "globalspin/euler.hpp"

#include <cmath>
#include <numbers>

namespace globalspin {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

}  // namespace

EulerAngles euler_zxz(const CMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2 || !is_finite(u) || !is_unitary(u, tol::kUnitarity)) {
    throw Error(ErrorCode::NotUnitary2x2, "target must be a 2x2 unitary");
  }
  EulerAngles e;
  e.delta = std::arg(u.determinant()) / 2.0;
  const double c = std::abs(u(0, 0));
  const double s = std::abs(u(0, 1));
  e.beta = 2.0 * std::atan2(s, c);
  // u00 = e^{i delta} c e^{-i (alpha + gamma)/2},
  // i u01 = e^{i delta} s e^{-i (gamma - alpha)/2}.
  constexpr double kTiny = 1e-14;
  const double sum = c > kTiny ? 2.0 * (e.delta - std::arg(u(0, 0))) : 0.0;
  const double diff = s > kTiny ? 2.0 * (e.delta - std::arg(kI * u(0, 1))) : -sum;
  e.alpha = wrap((sum - diff) / 2.0);
  e.gamma = wrap((sum + diff) / 2.0);
  // Wrapping alpha and gamma independently can flip the overall sign.
  const double cb = std::cos(e.beta / 2.0), sb = std::sin(e.beta / 2.0);
  const Complex m00 = cb * std::polar(1.0, -(e.alpha + e.gamma) / 2.0);
  const Complex m01 = -kI * sb * std::polar(1.0, (e.alpha - e.gamma) / 2.0);
  const Complex m10 = -kI * sb * std::polar(1.0, (e.gamma - e.alpha) / 2.0);
  const Complex m11 = cb * std::polar(1.0, (e.alpha + e.gamma) / 2.0);
  const Complex overlap = std::conj(m00) * u(0, 0) + std::conj(m01) * u(0, 1) +
                          std::conj(m10) * u(1, 0) + std::conj(m11) * u(1, 1);
  e.delta = std::arg(overlap);
  return e;
}

Circuit rotation_block(const RegisterSpec& reg, int i, int j, Axis axis, double angle,
                       const AxisConstants& constants) {
  if (axis == Axis::Y) throw Error(ErrorCode::UnrealizableAngles, "no y-axis rotation block");
  if (angle == 0.0) {
    reg.check_pair(i, j);
    return Circuit(reg);
  }
  const SymbolBinding b = device_binding(reg, i, j, angle, constants);
  const TemplateSequence& seq = axis == Axis::Z ? rotation_z_template() : rotation_x_template();
  return merge_adjacent_fields(instantiate(seq, b, reg));
}

Circuit su2_compile(const CMatrix& target, int i, int j, const AxisConstants& constants,
                    const RegisterSpec& reg) {
  const EulerAngles e = euler_zxz(target);
  Circuit c(reg);
  c.append(rotation_block(reg, i, j, Axis::Z, e.alpha, constants));
  c.append(rotation_block(reg, i, j, Axis::X, e.beta, constants));
  c.append(rotation_block(reg, i, j, Axis::Z, e.gamma, constants));
  return c;
}

}  // namespace globalspin
