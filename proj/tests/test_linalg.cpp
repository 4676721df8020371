#include <gtest/gtest.h>

#include "globalspin/linalg.hpp"
#include "support.hpp"

using namespace globalspin;
using namespace gs_test;

TEST(Linalg, KronMatchesNaiveProduct) {
  auto rng = rng_for(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Index ra = 1 + static_cast<Index>(trial % 3), rb = 1 + static_cast<Index>(trial % 4);
    const CMatrix a = gaussian(rng, ra, ra + 1);
    const CMatrix b = gaussian(rng, rb, rb);
    EXPECT_LE(max_abs(kron(a, b) - naive_kron(a, b)), 1e-15);
  }
}

TEST(Linalg, KronMixedProductProperty) {
  auto rng = rng_for(2);
  for (int trial = 0; trial < 50; ++trial) {
    const CMatrix a = gaussian(rng, 2, 2), b = gaussian(rng, 4, 4);
    const CMatrix c = gaussian(rng, 2, 2), d = gaussian(rng, 4, 4);
    EXPECT_LE(max_abs(kron(a, b) * kron(c, d) - kron(a * c, b * d)), 1e-12);
  }
}

TEST(Linalg, HermitianExpmMatchesTaylorOracle) {
  auto rng = rng_for(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Index dim = Index{1} << (1 + trial % 4);
    const CMatrix h = random_hermitian(rng, dim);
    const double s = uniform(rng, -3.0, 3.0);
    EXPECT_LE(max_abs(hermitian_expm(h, s).matrix() - taylor_expm(h, s)), 1e-12) << "dim " << dim;
  }
}

TEST(Linalg, HermitianExpmRejectsNonHermitian) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  try {
    hermitian_expm(m, 1.0);
    FAIL() << "expected NotHermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(Linalg, FromMatrixChecksUnitarity) {
  EXPECT_NO_THROW(Unitary::from_matrix(pauli('x')));
  try {
    Unitary::from_matrix(2.0 * pauli('x'));
    FAIL() << "expected NotUnitary";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
  }
  CMatrix rect = CMatrix::Zero(2, 3);
  EXPECT_THROW(Unitary::from_matrix(rect), Error);
  CMatrix nan = pauli('z');
  nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Unitary::from_matrix(nan), Error);
}

TEST(Linalg, PhaseDistanceIgnoresGlobalPhase) {
  auto rng = rng_for(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Unitary u = Unitary::from_matrix(haar_unitary(rng, 4));
    const Complex phase = std::polar(1.0, uniform(rng, -kPi, kPi));
    EXPECT_LE(phase_distance(u, phase * u), 1e-14);
    EXPECT_LE(std::abs(relative_phase(phase * u, u) - phase), 1e-12);
  }
}

TEST(Linalg, PhaseDistanceIsSymmetricAndBounded) {
  auto rng = rng_for(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Unitary u = Unitary::from_matrix(haar_unitary(rng, 4));
    const Unitary v = Unitary::from_matrix(haar_unitary(rng, 4));
    const double d = phase_distance(u, v);
    EXPECT_NEAR(d, phase_distance(v, u), 1e-14);
    EXPECT_GE(d, 0.0);
    EXPECT_LE(d, std::sqrt(2.0) + 1e-14);
    // Trace formula, safe away from zero.
    const double trace_form = std::sqrt(std::max(0.0, 2.0 - 2.0 * std::abs((u.matrix().adjoint() * v.matrix()).trace()) / 4.0));
    EXPECT_NEAR(d, trace_form, 1e-12);
  }
}

TEST(Linalg, PhaseDistanceResolvesSmallDifferences) {
  // The trace form would return 0 or ~1e-8 here; the distance must scale linearly.
  const double eps = 1e-13;
  const CMatrix rz = (CMatrix(2, 2) << std::polar(1.0, -eps / 2), 0.0, 0.0, std::polar(1.0, eps / 2)).finished();
  const double d = phase_distance(Unitary::identity(2), Unitary::from_matrix(rz));
  EXPECT_GT(d, 0.2 * eps);
  EXPECT_LT(d, 2.0 * eps);
}

TEST(Linalg, PhaseDistanceDimensionMismatch) {
  try {
    phase_distance(Unitary::identity(2), Unitary::identity(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Linalg, ProductAndAdjointStayUnitary) {
  auto rng = rng_for(6);
  Unitary acc = Unitary::identity(8);
  for (int k = 0; k < 200; ++k) acc = Unitary::from_matrix(haar_unitary(rng, 8)) * acc;
  EXPECT_TRUE(is_unitary(acc.matrix(), 1e-12));
  EXPECT_LE(max_abs((acc.adjoint() * acc).matrix() - CMatrix::Identity(8, 8)), 1e-12);
}

TEST(Linalg, CommutatorNorm) {
  EXPECT_EQ(commutator_norm(pauli('z'), pauli('z')), 0.0);
  // [X, Z] = -2iY has max entry 2.
  EXPECT_NEAR(commutator_norm(pauli('x'), pauli('z')), 2.0, 1e-15);
}
