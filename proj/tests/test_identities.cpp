#include <gtest/gtest.h>

#include "globalspin/identities.hpp"
#include "support.hpp"

using namespace globalspin;
using namespace gs_test;

namespace {

constexpr int kDraws = 200;

/// Changes one angle of one field op of the circuit by `delta`.
Circuit mutate(const Circuit& c, std::mt19937_64& rng, double delta) {
  std::vector<PulseOp> ops = c.ops();
  std::vector<std::size_t> fields;
  for (std::size_t k = 0; k < ops.size(); ++k)
    if (ops[k].is_field()) fields.push_back(k);
  auto& f = std::get<GlobalFieldOp>(ops[fields[rng() % fields.size()]].kind);
  f.angles[rng() % f.angles.size()] += delta;
  return Circuit(c.reg(), std::move(ops));
}

std::vector<double> bystanders(std::mt19937_64& rng, int n) { return angles(rng, n, -kPi, kPi); }

}  // namespace

TEST(Identities, SwapConjugationExchangesAngles) {
  auto rng = rng_for(30);
  for (int d = 0; d < kDraws; ++d) {
    const double ti = uniform(rng, -kPi, kPi), tj = uniform(rng, -kPi, kPi);
    const auto c = swap_conjugation(RegisterSpec(2), 0, 1, ti, tj);
    // Independent oracle: V^z(theta_j, theta_i) built from hand Paulis.
    const CMatrix h = ti * on_spin(pauli('z') / 2.0, 1, 2) + tj * on_spin(pauli('z') / 2.0, 0, 2);
    EXPECT_LE(max_abs(evaluate(c.circuit).matrix() - taylor_expm(h, 1.0)), 1e-12);
    const auto v = verify_target(c.circuit, c.target, tol::kIdentity);
    EXPECT_TRUE(v.passed);
  }
}

TEST(Identities, SwapConjugationWithBystanders) {
  auto rng = rng_for(31);
  for (int d = 0; d < kDraws; ++d) {
    const auto c = swap_conjugation(RegisterSpec(4), 1, 3, uniform(rng, -kPi, kPi), uniform(rng, -kPi, kPi),
                                    bystanders(rng, 4));
    const auto v = verify_target(c.circuit, c.target, tol::kComposite);
    EXPECT_TRUE(v.passed);
    EXPECT_LE(v.bystander_residual, tol::kComposite);
  }
}

TEST(Identities, TildeSwapFlipsAndSwapsZPhases) {
  auto rng = rng_for(32);
  for (int d = 0; d < kDraws; ++d) {
    const auto f = tilde_swap_factor(RegisterSpec(2), 0, 1, uniform(rng, -kPi, kPi), uniform(rng, -kPi, kPi),
                                     uniform(rng, -kPi, kPi));
    EXPECT_LE(f.deviation, tol::kIdentity);
    EXPECT_NEAR(std::abs(f.factor), 1.0, 1e-12);
  }
}

TEST(Identities, TildeSwapScalarIsMinusI) {
  const auto f = tilde_swap_factor(RegisterSpec(2), 0, 1, 0.3, 0.7, -1.1);
  EXPECT_LE(std::abs(f.factor - Complex(0.0, -1.0)), 1e-12);
}

TEST(Identities, CpExactAndUpToLocalZ) {
  auto rng = rng_for(33);
  const RegisterSpec two(2);
  for (int d = 0; d < kDraws; ++d) {
    const auto c = cp_circuit(two, 0, 1, uniform(rng, -kPi, kPi));
    const auto exact = verify_target(c.circuit, c.target, tol::kIdentity);
    EXPECT_LE(exact.exact_deviation, tol::kIdentity);
    const auto local = verify_target(c.circuit, controlled_phase_target(two, 0, 1), tol::kIdentity);
    EXPECT_TRUE(local.passed);
    EXPECT_EQ(local.local_z_angles.size(), 2u);
  }
  // Oracle: exp(-i pi S^z S^z) from hand Paulis.
  const CMatrix zz = on_spin(pauli('z') / 2.0, 0, 2) * on_spin(pauli('z') / 2.0, 1, 2);
  EXPECT_LE(max_abs(cp_circuit(two, 0, 1, 0.4).target.unitary.matrix() - taylor_expm(zz, kPi)), 1e-14);
}

TEST(Identities, CpWithBystanders) {
  auto rng = rng_for(34);
  for (int d = 0; d < kDraws; ++d) {
    const auto c = cp_circuit(RegisterSpec(4), 2, 1, uniform(rng, -kPi, kPi), bystanders(rng, 4));
    const auto v = verify_target(c.circuit, c.target, tol::kComposite);
    EXPECT_TRUE(v.passed);
  }
}

TEST(Identities, XYSingleSpinRotation) {
  auto rng = rng_for(35);
  for (int d = 0; d < kDraws; ++d) {
    const double ti = uniform(rng, -kPi, kPi);
    const auto c = xy_single_spin_circuit(RegisterSpec(4), 0, 3, ti, uniform(rng, -kPi, kPi), bystanders(rng, 4));
    EXPECT_TRUE(verify_target(c.circuit, c.target, tol::kComposite).passed);
    // Oracle: exp(+i 2 theta_i S^x) on spin 0.
    const CMatrix oracle = taylor_expm(on_spin(pauli('x') / 2.0, 0, 4), -2.0 * ti);
    EXPECT_LE(phase_distance(evaluate(c.circuit), Unitary::from_matrix(oracle)), tol::kComposite);
  }
  EXPECT_LE(std::abs(xy_single_spin_literal_factor(0.4, 1.3) + 1.0), 1e-12);
}

TEST(Identities, XYControlledPhase) {
  auto rng = rng_for(36);
  EXPECT_EQ(xy_cp_zz_normalization(OuterRotation::Pauli), -2.0);
  for (int d = 0; d < kDraws; ++d) {
    const auto c = xy_cp_circuit(RegisterSpec(4), 1, 2, uniform(rng, -kPi, kPi), OuterRotation::Pauli,
                                 bystanders(rng, 4));
    EXPECT_TRUE(verify_target(c.circuit, c.target, tol::kComposite).passed);
  }
  EXPECT_GT(xy_cp_spin_reading_residual(0.7), 1e-3);
}

TEST(Identities, ParallelApplyMatchesTensorTarget) {
  auto rng = rng_for(37);
  const std::vector<std::pair<int, int>> pairs{{0, 1}, {2, 3}, {4, 5}};
  const RegisterSpec six(6);
  for (int d = 0; d < 20; ++d) {
    const auto cp = cp_circuit(RegisterSpec(2), 0, 1, uniform(rng, -kPi, kPi));
    const Circuit par = parallel_apply(cp.circuit, pairs, six);
    EXPECT_EQ(par.layer_count(), cp.circuit.step_count());
    const Unitary target = parallel_target(cp.target.unitary, pairs, six);
    EXPECT_LE(phase_distance(evaluate(par), target), tol::kComposite);
  }
}

TEST(Identities, ParallelApplyRejectsOverlap) {
  const auto cp = cp_circuit(RegisterSpec(2), 0, 1, 0.2);
  const std::vector<std::pair<int, int>> pairs{{0, 1}, {1, 2}};
  try {
    parallel_apply(cp.circuit, pairs, RegisterSpec(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OverlappingPairs);
  }
}

// A verifier that cannot fail is no verifier: every construction must be
// rejected once one of its angles is knocked off.
TEST(Identities, MutatedCircuitsAreRejected) {
  auto rng = rng_for(38);
  const RegisterSpec four(4);
  for (int d = 0; d < 50; ++d) {
    std::vector<Construction> cs;
    cs.push_back(swap_conjugation(four, 0, 1, 0.4 + d * 0.01, -0.9, bystanders(rng, 4)));
    cs.push_back(cp_circuit(four, 1, 2, uniform(rng, -kPi, kPi), bystanders(rng, 4)));
    cs.push_back(xy_single_spin_circuit(four, 2, 3, 0.8, 0.1, bystanders(rng, 4)));
    cs.push_back(xy_cp_circuit(four, 0, 3, 0.5 + d * 0.01, OuterRotation::Pauli, bystanders(rng, 4)));
    for (const auto& c : cs) {
      ASSERT_TRUE(verify_target(c.circuit, c.target, tol::kComposite).passed);
      const Circuit bad = mutate(c.circuit, rng, uniform(rng, 1e-4, 1e-2));
      EXPECT_FALSE(verify_target(bad, c.target, tol::kComposite).passed);
    }
  }
}

TEST(Identities, BystanderResidualDetectsLeak) {
  const RegisterSpec reg(3);
  const Unitary u = global_field_unitary(reg, Axis::Z, std::vector<double>{0.0, 0.0, 0.3});
  const std::vector<int> acted{0, 1};
  EXPECT_GT(bystander_residual(reg, u, acted), 0.1);
  const std::vector<int> all{0, 1, 2};
  EXPECT_EQ(bystander_residual(reg, u, all), 0.0);
}

TEST(Identities, VerifyRejectsDimensionMismatch) {
  const auto c = cp_circuit(RegisterSpec(2), 0, 1, 0.2);
  GateTarget t{Unitary::identity(8), {0, 1}, Equivalence::UpToGlobalPhase};
  try {
    verify_target(c.circuit, t, 1e-12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}
