#include <gtest/gtest.h>

#include "globalspin/euler.hpp"
#include "support.hpp"

using namespace globalspin;
using namespace gs_test;

namespace {

AxisConstants alternating_constants(int n = 4) {
  AxisConstants a;
  for (int k = 0; k < n; ++k) {
    a[static_cast<std::size_t>(Axis::Z)].push_back(k % 2 ? 0.75 : 1.0);
    a[static_cast<std::size_t>(Axis::X)].push_back(k % 2 ? 0.5 : 1.0);
  }
  return a;
}

CMatrix rebuild(const EulerAngles& e) {
  const CMatrix rz_a = taylor_expm(pauli('z') / 2.0, e.alpha);
  const CMatrix rx_b = taylor_expm(pauli('x') / 2.0, e.beta);
  const CMatrix rz_g = taylor_expm(pauli('z') / 2.0, e.gamma);
  return std::polar(1.0, e.delta) * rz_g * rx_b * rz_a;
}

}  // namespace

TEST(Euler, DecompositionRebuildsRandomUnitaries) {
  auto rng = rng_for(50);
  for (int trial = 0; trial < 500; ++trial) {
    const CMatrix u = haar_unitary(rng, 2);
    const EulerAngles e = euler_zxz(u);
    EXPECT_GE(e.beta, 0.0);
    EXPECT_LE(e.beta, kPi + 1e-15);
    EXPECT_GT(e.alpha, -kPi - 1e-15);
    EXPECT_LE(e.alpha, kPi + 1e-15);
    EXPECT_LE(max_abs(rebuild(e) - u), 1e-12);
  }
}

TEST(Euler, DegenerateTargets) {
  const CMatrix id = CMatrix::Identity(2, 2);
  const CMatrix h = (CMatrix(2, 2) << 1.0, 1.0, 1.0, -1.0).finished() / std::sqrt(2.0);
  for (const CMatrix& u : {id, pauli('x'), pauli('y'), pauli('z'), h, CMatrix(Complex(0, 1) * pauli('z'))}) {
    EXPECT_LE(max_abs(rebuild(euler_zxz(u)) - u), 1e-12);
  }
  EXPECT_NEAR(euler_zxz(id).beta, 0.0, 1e-15);
  EXPECT_NEAR(euler_zxz(pauli('x')).beta, kPi, 1e-15);
}

TEST(Euler, RejectsNonUnitary) {
  try {
    euler_zxz(2.0 * pauli('x'));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary2x2);
  }
  EXPECT_THROW(euler_zxz(CMatrix::Identity(4, 4)), Error);
}

TEST(Euler, RotationBlockShapeAndAction) {
  const auto a = alternating_constants();
  const RegisterSpec reg(4);
  auto rng = rng_for(51);
  for (Axis axis : {Axis::Z, Axis::X}) {
    for (int trial = 0; trial < 20; ++trial) {
      const double angle = uniform(rng, -kPi, kPi);
      const Circuit c = rotation_block(reg, 0, 1, axis, angle, a);
      EXPECT_EQ(c.step_count(), 11u);
      EXPECT_EQ(c.exchange_count(), 4u);
      EXPECT_EQ(c.field_count(), 7u);
      const char p = axis == Axis::Z ? 'z' : 'x';
      const CMatrix oracle = taylor_expm(on_spin(pauli(p) / 2.0, 0, 4), angle);
      GateTarget t{Unitary::from_matrix(oracle), {0}, Equivalence::UpToGlobalPhase};
      EXPECT_TRUE(verify_target(c, t, tol::kCompiled).passed);
    }
  }
  EXPECT_EQ(rotation_block(reg, 0, 1, Axis::Z, 0.0, a).step_count(), 0u);
  EXPECT_THROW(rotation_block(reg, 0, 1, Axis::Y, 0.3, a), Error);
  AxisConstants flat = a;
  flat[static_cast<std::size_t>(Axis::Z)] = {1.0, 1.0, 1.0, 1.0};
  EXPECT_THROW(rotation_block(reg, 0, 1, Axis::Z, 0.3, flat), Error);
}

TEST(Euler, CompiledGatesMatchTargets) {
  const auto a = alternating_constants();
  const auto a2 = alternating_constants(2);
  auto rng = rng_for(52);
  for (int trial = 0; trial < 25; ++trial) {
    const CMatrix u = haar_unitary(rng, 2);
    const Circuit two = su2_compile(u, 0, 1, a2, RegisterSpec(2));
    EXPECT_LE(two.field_count(), 21u);
    EXPECT_LE(phase_distance(evaluate(two), embed_one_spin(RegisterSpec(2), 0, u)), tol::kCompiled);
    const Circuit four = su2_compile(u, 2, 3, a, RegisterSpec(4));
    GateTarget t{embed_one_spin(RegisterSpec(4), 2, u), {2}, Equivalence::UpToGlobalPhase};
    const auto v = verify_target(four, t, tol::kCompiled);
    EXPECT_TRUE(v.passed) << v.distance << ' ' << v.bystander_residual;
  }
}
