#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "globalspin/linalg.hpp"

namespace gs_test {

using globalspin::CMatrix;
using globalspin::Complex;
using globalspin::Index;

inline constexpr double kPi = std::numbers::pi;

/// Fixed-seed engine per test so failures reproduce.
inline std::mt19937_64 rng_for(std::uint64_t salt) { return std::mt19937_64(0x9e3779b97f4a7c15ULL ^ salt); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<double> angles(std::mt19937_64& rng, int n, double lo = -kPi, double hi = kPi) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (double& a : out) a = uniform(rng, lo, hi);
  return out;
}

inline CMatrix gaussian(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c) m(r, c) = Complex(n(rng), n(rng));
  return m;
}

inline CMatrix random_hermitian(std::mt19937_64& rng, Index dim) {
  const CMatrix g = gaussian(rng, dim, dim);
  return (g + g.adjoint()) / 2.0;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal folded back into Q.
inline CMatrix haar_unitary(std::mt19937_64& rng, Index dim) {
  const CMatrix g = gaussian(rng, dim, dim);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
  return q;
}

/// exp(-i s H) by scaling and squaring a Taylor series; independent of the
/// library's eigendecomposition route.
inline CMatrix taylor_expm(const CMatrix& h, double s) {
  CMatrix a = Complex(0.0, -s) * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  a /= std::pow(2.0, squarings);
  CMatrix term = CMatrix::Identity(h.rows(), h.cols());
  CMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

/// Pauli matrices built by hand.
inline CMatrix pauli(char which) {
  CMatrix m = CMatrix::Zero(2, 2);
  switch (which) {
    case 'x': m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 'y': m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
    case 'z': m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    default: m = CMatrix::Identity(2, 2);
  }
  return m;
}

/// Naive Kronecker product, a major.
inline CMatrix naive_kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index r = 0; r < out.rows(); ++r)
    for (Index c = 0; c < out.cols(); ++c)
      out(r, c) = a(r / b.rows(), c / b.cols()) * b(r % b.rows(), c % b.cols());
  return out;
}

/// Operator `op` on spin k of n, identity elsewhere, via naive_kron.
inline CMatrix on_spin(const CMatrix& op, int k, int n) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (int s = 0; s < n; ++s) out = naive_kron(out, s == k ? op : CMatrix::Identity(2, 2));
  return out;
}

}  // namespace gs_test
