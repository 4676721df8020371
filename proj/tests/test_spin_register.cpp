#include <gtest/gtest.h>

#include "globalspin/constants.hpp"
#include "globalspin/spin_register.hpp"
#include "support.hpp"

using namespace globalspin;
using namespace gs_test;

namespace {

CMatrix oracle_exchange_h(int n, int i, int j) {
  CMatrix h = CMatrix::Zero(Index{1} << n, Index{1} << n);
  for (char a : {'x', 'y', 'z'}) h += on_spin(pauli(a) / 2.0, i, n) * on_spin(pauli(a) / 2.0, j, n);
  return h;
}

CMatrix oracle_xy_h(int n, int i, int j) {
  CMatrix h = CMatrix::Zero(Index{1} << n, Index{1} << n);
  for (char a : {'x', 'y'}) h += on_spin(pauli(a) / 2.0, i, n) * on_spin(pauli(a) / 2.0, j, n);
  return h;
}

}  // namespace

TEST(SpinRegister, RejectsBadSizesAndIndices) {
  EXPECT_THROW(RegisterSpec(0), Error);
  EXPECT_THROW(RegisterSpec(RegisterSpec::kMaxSpins + 1), Error);
  const RegisterSpec reg(3);
  try {
    reg.check_pair(1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EqualIndices);
  }
  try {
    reg.check_index(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
}

TEST(SpinRegister, SpinZeroIsTheMajorFactor) {
  const RegisterSpec reg(3);
  // |100> has spin 0 down: S_0^z = -1/2 on basis index 4.
  const CMatrix sz0 = spin_operator(reg, 0, Axis::Z);
  EXPECT_DOUBLE_EQ(sz0(4, 4).real(), -0.5);
  EXPECT_DOUBLE_EQ(sz0(1, 1).real(), 0.5);
  for (int k = 0; k < 3; ++k) {
    for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
      const char c = a == Axis::X ? 'x' : a == Axis::Y ? 'y' : 'z';
      EXPECT_LE(max_abs(spin_operator(reg, k, a) - on_spin(pauli(c) / 2.0, k, 3)), 0.0);
    }
  }
}

TEST(SpinRegister, ExchangeClosedFormMatchesOracle) {
  auto rng = rng_for(10);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 4;
    const int i = static_cast<int>(rng() % n);
    int j = static_cast<int>(rng() % (n - 1));
    if (j >= i) ++j;
    const double xi = uniform(rng, -4 * kPi, 4 * kPi);
    const RegisterSpec reg(n);
    const CMatrix oracle = taylor_expm(oracle_exchange_h(n, i, j), xi);
    EXPECT_LE(max_abs(exchange_unitary(reg, i, j, xi).matrix() - oracle), 1e-12);
    EXPECT_LE(max_abs(exchange_hamiltonian(reg, i, j) - oracle_exchange_h(n, i, j)), 1e-15);
  }
}

TEST(SpinRegister, XYClosedFormMatchesOracle) {
  auto rng = rng_for(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 3;
    const int i = static_cast<int>(rng() % n);
    int j = static_cast<int>(rng() % (n - 1));
    if (j >= i) ++j;
    const double phi = uniform(rng, -4 * kPi, 4 * kPi);
    const CMatrix oracle = taylor_expm(oracle_xy_h(n, i, j), phi);
    EXPECT_LE(max_abs(xy_exchange_unitary(RegisterSpec(n), i, j, phi).matrix() - oracle), 1e-12);
  }
}

TEST(SpinRegister, GlobalFieldMatchesOracle) {
  auto rng = rng_for(12);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 5;
    const Axis axis = trial % 3 == 0 ? Axis::X : trial % 3 == 1 ? Axis::Y : Axis::Z;
    const char c = axis == Axis::X ? 'x' : axis == Axis::Y ? 'y' : 'z';
    const auto th = angles(rng, n, -3 * kPi, 3 * kPi);
    CMatrix h = CMatrix::Zero(Index{1} << n, Index{1} << n);
    for (int k = 0; k < n; ++k) h += th[static_cast<std::size_t>(k)] * on_spin(pauli(c) / 2.0, k, n);
    const CMatrix oracle = taylor_expm(h, 1.0);
    EXPECT_LE(max_abs(global_field_unitary(RegisterSpec(n), axis, th).matrix() - oracle), 1e-12);
  }
}

TEST(SpinRegister, ExchangePiIsSwapUpToPhase) {
  const RegisterSpec reg(3);
  const Unitary u = exchange_unitary(reg, 0, 2, kPi);
  const Unitary sw = Unitary::from_matrix(swap_matrix(reg, 0, 2));
  EXPECT_LE(phase_distance(u, sw), 1e-15);
  EXPECT_LE(std::abs(relative_phase(u, sw) - std::polar(1.0, -kPi / 4)), 1e-15);
}

TEST(SpinRegister, SwapConjugatesSpinOperators) {
  const RegisterSpec reg(4);
  const CMatrix sw = swap_matrix(reg, 1, 3);
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    EXPECT_LE(max_abs(sw * spin_operator(reg, 1, a) * sw - spin_operator(reg, 3, a)), 0.0);
  }
}

TEST(SpinRegister, EmbedTwoSpinRespectsPairOrder) {
  const RegisterSpec reg(3);
  const CMatrix zx = kron(pauli('z'), pauli('x'));
  const Unitary u = embed_two_spin(reg, 2, 0, zx);
  EXPECT_LE(max_abs(u.matrix() - on_spin(pauli('z'), 2, 3) * on_spin(pauli('x'), 0, 3)), 1e-15);
  const Unitary v = embed_one_spin(reg, 1, pauli('y'));
  EXPECT_LE(max_abs(v.matrix() - on_spin(pauli('y'), 1, 3)), 1e-15);
}

TEST(SpinRegister, ZeemanAnglesFromFieldAndTime) {
  const std::vector<double> g{2.0, 2.0};
  const std::vector<double> b{1e-3, 0.5e-3};
  const auto half = zeeman_angles(g, b, 1e-9, AngleConvention::Half);
  const auto full = zeeman_angles(g, b, 1e-9, AngleConvention::Full);
  const double rate = 2.0 * phys::kBohrMagneton / phys::kHbar;
  EXPECT_NEAR(full[0], rate * 1e-3 * 1e-9, 1e-15);
  EXPECT_NEAR(half[0], 0.5 * full[0], 1e-15);
  EXPECT_NEAR(full[1], 0.5 * full[0], 1e-15);
  EXPECT_THROW(zeeman_angles(g, b, -1e-9), Error);
  EXPECT_THROW(zeeman_angles(g, std::vector<double>{1.0}, 1e-9), Error);
}

TEST(SpinRegister, PulseParamsValidation) {
  const RegisterSpec reg(2);
  ZeemanPulseParams p{Axis::Z, {0.1, 0.2}, std::nullopt};
  EXPECT_NO_THROW(p.validate(reg));
  EXPECT_TRUE(p.inhomogeneous(0, 1));
  p.angles = {0.1, -0.1};
  EXPECT_FALSE(p.inhomogeneous(0, 1));
  p.angles = {0.1};
  EXPECT_THROW(p.validate(reg), Error);
  p.angles = {0.1, std::numeric_limits<double>::infinity()};
  EXPECT_THROW(p.validate(reg), Error);

  ZeemanProvenance prov{{2.0, 2.0}, {1e-3, 1e-3}, 1e-9, AngleConvention::Full};
  const auto consistent = zeeman_angles(prov.g, prov.field_tesla, prov.profile_integral_s, prov.convention);
  ZeemanPulseParams q{Axis::Z, consistent, prov};
  EXPECT_NO_THROW(q.validate(reg));
  q.angles[1] *= 1.01;
  EXPECT_THROW(q.validate(reg), Error);
}
