#include "globalspin/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace globalspin {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EqualIndices: return "EqualIndices";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NegativeDuration: return "NegativeDuration";
    case ErrorCode::InvalidRegister: return "InvalidRegister";
    case ErrorCode::OverlappingPairs: return "OverlappingPairs";
    case ErrorCode::NotUnitary2x2: return "NotUnitary2x2";
    case ErrorCode::EmptyAlphabet: return "EmptyAlphabet";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidProblem: return "InvalidProblem";
    case ErrorCode::PointInsideWire: return "PointInsideWire";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::ZeroFieldSite: return "ZeroFieldSite";
    case ErrorCode::NonpositiveGradient: return "NonpositiveGradient";
    case ErrorCode::UnrealizableAngles: return "UnrealizableAngles";
    case ErrorCode::DurationCapExceeded: return "DurationCapExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_square(const CMatrix& m) { return m.rows() == m.cols() && m.rows() > 0; }

bool is_finite(const CMatrix& m) { return m.allFinite(); }

bool is_hermitian(const CMatrix& m, double tolerance) {
  return is_square(m) && is_finite(m) && max_abs(m - m.adjoint()) <= tolerance;
}

bool is_unitary(const CMatrix& m, double tolerance) {
  if (!is_square(m) || !is_finite(m)) return false;
  const CMatrix gram = m.adjoint() * m;
  return max_abs(gram - CMatrix::Identity(m.rows(), m.cols())) <= tolerance;
}

Unitary Unitary::identity(Index dim) { return Unitary(CMatrix::Identity(dim, dim)); }

Unitary Unitary::from_matrix(CMatrix m, double tolerance) {
  if (!is_square(m)) throw Error(ErrorCode::NotUnitary, "matrix is not square");
  if (!is_finite(m)) throw Error(ErrorCode::NotUnitary, "matrix has non-finite entries");
  if (!is_unitary(m, tolerance)) {
    const double dev = max_abs(m.adjoint() * m - CMatrix::Identity(m.rows(), m.cols()));
    throw Error(ErrorCode::NotUnitary, "||U^dagger U - I||_max = " + std::to_string(dev));
  }
  return Unitary(std::move(m));
}

Unitary Unitary::trusted(CMatrix m) { return Unitary(std::move(m)); }

Unitary Unitary::adjoint() const { return Unitary(m_.adjoint()); }

Unitary operator*(const Unitary& a, const Unitary& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
  return Unitary(a.m_ * b.m_);
}

Unitary operator*(Complex phase, const Unitary& u) { return Unitary(phase * u.m_); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

Unitary kron(const Unitary& a, const Unitary& b) {
  return Unitary::trusted(kron(a.matrix(), b.matrix()));
}

Unitary hermitian_expm(const CMatrix& h, double scale) {
  if (!is_square(h)) throw Error(ErrorCode::NotHermitian, "matrix is not square");
  if (!is_hermitian(h)) {
    throw Error(ErrorCode::NotHermitian,
                "||H - H^dagger||_max = " + std::to_string(max_abs(h - h.adjoint())));
  }
  // Symmetrise so the solver sees an exactly Hermitian input.
  const CMatrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hs);
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const CMatrix& vecs = solver.eigenvectors();
  Eigen::VectorXcd phases(lambda.size());
  for (Index k = 0; k < lambda.size(); ++k) {
    phases(k) = std::exp(-kI * (scale * lambda(k)));
  }
  return Unitary::trusted(vecs * phases.asDiagonal() * vecs.adjoint());
}

Complex relative_phase(const Unitary& u, const Unitary& v) {
  if (u.dim() != v.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(u.dim()) + " vs " + std::to_string(v.dim()));
  }
  const Complex overlap = (v.matrix().adjoint() * u.matrix()).trace();
  const double mag = std::abs(overlap);
  if (mag == 0.0) return {1.0, 0.0};
  return overlap / mag;
}

double phase_distance(const Unitary& u, const Unitary& v) {
  const Complex phase = relative_phase(u, v);
  const double frob = (u.matrix() - phase * v.matrix()).norm();
  const double d = frob / std::sqrt(static_cast<double>(u.dim()));
  // For unitaries d^2 = 2 - 2|tr(u^dagger v)|/dim, which is at most 2.
  return std::min(d, std::sqrt(2.0));
}

double commutator_norm(const CMatrix& a, const CMatrix& b) {
  return max_abs(a * b - b * a);
}

}  // namespace globalspin
