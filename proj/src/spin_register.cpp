#include "globalspin/spin_register.hpp"

#include <cctype>
#include <cmath>

#include "globalspin/constants.hpp"

namespace globalspin {

char axis_char(Axis axis) {
  switch (axis) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  return '?';
}

Axis parse_axis(const std::string& text) {
  if (text.size() == 1) {
    switch (std::tolower(static_cast<unsigned char>(text[0]))) {
      case 'x': return Axis::X;
      case 'y': return Axis::Y;
      case 'z': return Axis::Z;
      default: break;
    }
  }
  throw Error(ErrorCode::ParseError, "unknown axis '" + text + "'");
}

RegisterSpec::RegisterSpec(int n_spins) : n_(n_spins) {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw Error(ErrorCode::InvalidRegister,
                "register size " + std::to_string(n_spins) + " outside [1, 12]");
  }
}

void RegisterSpec::check_index(int k) const {
  if (k < 0 || k >= n_) {
    throw Error(ErrorCode::IndexOutOfRange,
                "spin " + std::to_string(k) + " on a " + std::to_string(n_) + "-spin register");
  }
}

void RegisterSpec::check_pair(int i, int j) const {
  check_index(i);
  check_index(j);
  if (i == j) throw Error(ErrorCode::EqualIndices, "pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
}

const char* to_string(AngleConvention c) {
  return c == AngleConvention::Half ? "half" : "full";
}

AngleConvention parse_convention(const std::string& text) {
  if (text == "half") return AngleConvention::Half;
  if (text == "full") return AngleConvention::Full;
  throw Error(ErrorCode::ParseError, "unknown angle convention '" + text + "'");
}

double zeeman_rate_per_tesla_second(double g, AngleConvention convention) {
  const double full = g * phys::kBohrMagneton / phys::kHbar;
  return convention == AngleConvention::Half ? 0.5 * full : full;
}

void ZeemanPulseParams::validate(const RegisterSpec& reg) const {
  if (static_cast<int>(angles.size()) != reg.n_spins()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(angles.size()) + " angles for " +
                                               std::to_string(reg.n_spins()) + " spins");
  }
  for (double a : angles) {
    if (!std::isfinite(a)) throw Error(ErrorCode::LengthMismatch, "non-finite angle");
  }
  if (!provenance) return;
  const auto expected = zeeman_angles(provenance->g, provenance->field_tesla,
                                      provenance->profile_integral_s, provenance->convention);
  if (expected.size() != angles.size()) {
    throw Error(ErrorCode::LengthMismatch, "provenance length differs from angle list");
  }
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const double scale = std::max(std::abs(expected[k]), 1e-300);
    if (std::abs(angles[k] - expected[k]) > tol::kProvenance * scale &&
        std::abs(angles[k] - expected[k]) > 1e-300) {
      throw Error(ErrorCode::InvalidRegister,
                  "angle " + std::to_string(k) + " disagrees with its field provenance");
    }
  }
}

bool ZeemanPulseParams::inhomogeneous(int i, int j, double min_gap) const {
  const double a = angles.at(static_cast<std::size_t>(i));
  const double b = angles.at(static_cast<std::size_t>(j));
  return std::abs(a - b) > min_gap && std::abs(a + b) > min_gap;
}

CMatrix spin_rotation(Axis axis, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  CMatrix r(2, 2);
  switch (axis) {
    case Axis::X:
      r << Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0);
      break;
    case Axis::Y:
      r << Complex(c, 0), Complex(-s, 0), Complex(s, 0), Complex(c, 0);
      break;
    case Axis::Z:
      r << std::exp(Complex(0, -theta / 2.0)), 0.0, 0.0, std::exp(Complex(0, theta / 2.0));
      break;
  }
  return r;
}

namespace {

CMatrix half_pauli(Axis axis) {
  CMatrix s(2, 2);
  switch (axis) {
    case Axis::X: s << 0.0, 0.5, 0.5, 0.0; break;
    case Axis::Y: s << 0.0, Complex(0, -0.5), Complex(0, 0.5), 0.0; break;
    case Axis::Z: s << 0.5, 0.0, 0.0, -0.5; break;
  }
  return s;
}

}  // namespace

CMatrix spin_operator(const RegisterSpec& reg, int k, Axis axis) {
  reg.check_index(k);
  CMatrix out = CMatrix::Identity(1, 1);
  const CMatrix id2 = CMatrix::Identity(2, 2);
  for (int q = 0; q < reg.n_spins(); ++q) {
    out = kron(out, q == k ? half_pauli(axis) : id2);
  }
  return out;
}

CMatrix exchange_hamiltonian(const RegisterSpec& reg, int i, int j) {
  reg.check_pair(i, j);
  CMatrix h = CMatrix::Zero(reg.dim(), reg.dim());
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    h += spin_operator(reg, i, a) * spin_operator(reg, j, a);
  }
  return h;
}

CMatrix xy_hamiltonian(const RegisterSpec& reg, int i, int j) {
  reg.check_pair(i, j);
  return spin_operator(reg, i, Axis::X) * spin_operator(reg, j, Axis::X) +
         spin_operator(reg, i, Axis::Y) * spin_operator(reg, j, Axis::Y);
}

namespace {

Index swap_bits(Index r, Index bi, Index bj) {
  const bool vi = (r & bi) != 0;
  const bool vj = (r & bj) != 0;
  if (vi == vj) return r;
  return r ^ bi ^ bj;
}

}  // namespace

CMatrix swap_matrix(const RegisterSpec& reg, int i, int j) {
  reg.check_pair(i, j);
  const Index bi = reg.bit(i);
  const Index bj = reg.bit(j);
  CMatrix p = CMatrix::Zero(reg.dim(), reg.dim());
  for (Index r = 0; r < reg.dim(); ++r) p(swap_bits(r, bi, bj), r) = 1.0;
  return p;
}

Unitary exchange_unitary(const RegisterSpec& reg, int i, int j, double xi) {
  reg.check_pair(i, j);
  const Complex global = std::exp(Complex(0, xi / 4.0));
  const Complex diag = global * std::cos(xi / 2.0);
  const Complex off = global * Complex(0, -std::sin(xi / 2.0));
  const Index bi = reg.bit(i);
  const Index bj = reg.bit(j);
  CMatrix u = CMatrix::Zero(reg.dim(), reg.dim());
  for (Index r = 0; r < reg.dim(); ++r) {
    u(r, r) += diag;
    u(swap_bits(r, bi, bj), r) += off;
  }
  return Unitary::trusted(std::move(u));
}

Unitary xy_exchange_unitary(const RegisterSpec& reg, int i, int j, double phi) {
  reg.check_pair(i, j);
  // On the pair, (XX + YY)/4 in Pauli units is (|01><10| + |10><01|)/2.
  const Complex c = std::cos(phi / 2.0);
  const Complex s = Complex(0, -std::sin(phi / 2.0));
  const Index bi = reg.bit(i);
  const Index bj = reg.bit(j);
  CMatrix u = CMatrix::Zero(reg.dim(), reg.dim());
  for (Index r = 0; r < reg.dim(); ++r) {
    const bool vi = (r & bi) != 0;
    const bool vj = (r & bj) != 0;
    if (vi == vj) {
      u(r, r) = 1.0;
    } else {
      u(r, r) = c;
      u(r ^ bi ^ bj, r) = s;
    }
  }
  return Unitary::trusted(std::move(u));
}

Unitary global_field_unitary(const RegisterSpec& reg, Axis axis, std::span<const double> angles) {
  if (static_cast<int>(angles.size()) != reg.n_spins()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(angles.size()) + " angles for " +
                                               std::to_string(reg.n_spins()) + " spins");
  }
  if (axis == Axis::Z) {
    CMatrix u = CMatrix::Zero(reg.dim(), reg.dim());
    for (Index r = 0; r < reg.dim(); ++r) {
      double phase = 0.0;
      for (int k = 0; k < reg.n_spins(); ++k) {
        const double sz = (r & reg.bit(k)) ? -0.5 : 0.5;
        phase -= angles[static_cast<std::size_t>(k)] * sz;
      }
      u(r, r) = std::exp(Complex(0, phase));
    }
    return Unitary::trusted(std::move(u));
  }
  CMatrix u = CMatrix::Identity(1, 1);
  for (int k = 0; k < reg.n_spins(); ++k) {
    u = kron(u, spin_rotation(axis, angles[static_cast<std::size_t>(k)]));
  }
  return Unitary::trusted(std::move(u));
}

Unitary global_field_unitary(const RegisterSpec& reg, const ZeemanPulseParams& p) {
  p.validate(reg);
  return global_field_unitary(reg, p.axis, p.angles);
}

std::vector<double> zeeman_angles(std::span<const double> g, std::span<const double> field_tesla,
                                  double profile_integral_s, AngleConvention convention) {
  if (g.size() != field_tesla.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(g.size()) + " g-factors for " +
                                               std::to_string(field_tesla.size()) + " fields");
  }
  if (profile_integral_s < 0.0) {
    throw Error(ErrorCode::NegativeDuration, "profile integral " + std::to_string(profile_integral_s));
  }
  std::vector<double> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    out[k] = zeeman_rate_per_tesla_second(g[k], convention) * field_tesla[k] * profile_integral_s;
  }
  return out;
}

Unitary embed_two_spin(const RegisterSpec& reg, int i, int j, const CMatrix& u) {
  reg.check_pair(i, j);
  if (u.rows() != 4 || u.cols() != 4) throw Error(ErrorCode::DimensionMismatch, "expected a 4x4 operator");
  const Index bi = reg.bit(i);
  const Index bj = reg.bit(j);
  const Index mask = bi | bj;
  auto local = [&](Index r) { return ((r & bi) ? 2 : 0) + ((r & bj) ? 1 : 0); };
  CMatrix out = CMatrix::Zero(reg.dim(), reg.dim());
  for (Index r = 0; r < reg.dim(); ++r) {
    for (Index c = 0; c < reg.dim(); ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      out(r, c) = u(local(r), local(c));
    }
  }
  return Unitary::from_matrix(std::move(out), tol::kComposite);
}

Unitary embed_one_spin(const RegisterSpec& reg, int k, const CMatrix& u) {
  reg.check_index(k);
  if (u.rows() != 2 || u.cols() != 2) throw Error(ErrorCode::DimensionMismatch, "expected a 2x2 operator");
  CMatrix out = CMatrix::Identity(1, 1);
  const CMatrix id2 = CMatrix::Identity(2, 2);
  for (int q = 0; q < reg.n_spins(); ++q) out = kron(out, q == k ? u : id2);
  return Unitary::from_matrix(std::move(out), tol::kComposite);
}

}  // namespace globalspin
