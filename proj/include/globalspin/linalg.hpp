#pragma once

#include <complex>

#include <Eigen/Dense>

#include "globalspin/error.hpp"
#include "globalspin/tolerances.hpp"

namespace globalspin {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

/// Largest absolute entry.
double max_abs(const CMatrix& m);

bool is_square(const CMatrix& m);
bool is_finite(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol = tol::kHermitian);
bool is_unitary(const CMatrix& m, double tol = tol::kUnitarity);

/// A square complex matrix known to satisfy ||U^dagger U - I||_max <= tolerance.
///
/// Construction from an arbitrary matrix checks the invariant; the products
/// and adjoints below preserve it up to rounding and skip the check.
class Unitary {
 public:
  static Unitary identity(Index dim);

  /// Throws Error{NotUnitary} if the matrix is non-square, non-finite or not unitary.
  static Unitary from_matrix(CMatrix m, double tolerance = tol::kUnitarity);

  /// For matrices that are unitary by construction (closed forms).
  static Unitary trusted(CMatrix m);

  const CMatrix& matrix() const noexcept { return m_; }
  Index dim() const noexcept { return m_.rows(); }

  Unitary adjoint() const;
  Complex trace() const { return m_.trace(); }

  /// Matrix product; (a * b) applies b first.
  friend Unitary operator*(const Unitary& a, const Unitary& b);
  friend Unitary operator*(Complex phase, const Unitary& u);

 private:
  explicit Unitary(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

/// Tensor product with `a`'s index as the major (slower-varying) one.
CMatrix kron(const CMatrix& a, const CMatrix& b);
Unitary kron(const Unitary& a, const Unitary& b);

/// exp(-i * scale * h) for Hermitian h via a full eigendecomposition.
/// Throws Error{NotHermitian}.
Unitary hermitian_expm(const CMatrix& h, double scale);

/// Global-phase-invariant distance sqrt(max(0, 2 - 2|tr(u^dagger v)|/dim)).
///
/// Evaluated as min over phi of ||u - e^{i phi} v||_F / sqrt(dim), which is the
/// same quantity for unitaries but does not lose half the digits to the square
/// root near zero. Throws Error{DimensionMismatch}.
double phase_distance(const Unitary& u, const Unitary& v);

/// The unit-modulus scalar c minimising ||u - c v||_F (1 if tr(v^dagger u) = 0).
Complex relative_phase(const Unitary& u, const Unitary& v);

/// ||a b - b a||_max.
double commutator_norm(const CMatrix& a, const CMatrix& b);

}  // namespace globalspin
