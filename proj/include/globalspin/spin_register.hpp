#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "globalspin/linalg.hpp"

namespace globalspin {

enum class Axis { X, Y, Z };

char axis_char(Axis axis);
/// Parses "x", "y", "z" (either case). Throws Error{ParseError}.
Axis parse_axis(const std::string& text);

/// An N-spin register. Spin 0 is the highest-order tensor factor, so in a
/// basis index spin k is bit (N - 1 - k) and |100> has spin 0 down.
class RegisterSpec {
 public:
  static constexpr int kMaxSpins = 12;

  /// Throws Error{InvalidRegister} unless 1 <= n_spins <= kMaxSpins.
  explicit RegisterSpec(int n_spins);

  int n_spins() const noexcept { return n_; }
  Index dim() const noexcept { return Index{1} << n_; }

  /// Throws Error{IndexOutOfRange}.
  void check_index(int k) const;
  /// Throws Error{IndexOutOfRange} or Error{EqualIndices}.
  void check_pair(int i, int j) const;

  /// Bit mask selecting spin k in a basis index.
  Index bit(int k) const noexcept { return Index{1} << (n_ - 1 - k); }

  friend bool operator==(const RegisterSpec&, const RegisterSpec&) = default;

 private:
  int n_;
};

/// Which form of the Zeeman angle theta_k = c * g_k mu_B B_k / hbar * int f dt
/// to use: c = 1/2 (the literal pulse definition) or c = 1 (the form that the
/// 18 mT ns pulse-area estimate corresponds to).
enum class AngleConvention { Half, Full };

const char* to_string(AngleConvention c);
AngleConvention parse_convention(const std::string& text);

/// Angle accumulated per tesla-second of field: c * g * mu_B / hbar with
/// c = 1/2 (Half) or 1 (Full).
double zeeman_rate_per_tesla_second(double g, AngleConvention convention);

struct ZeemanProvenance {
  std::vector<double> g;
  std::vector<double> field_tesla;
  double profile_integral_s = 0.0;
  AngleConvention convention = AngleConvention::Half;
};

struct ZeemanPulseParams {
  Axis axis = Axis::Z;
  std::vector<double> angles;
  std::optional<ZeemanProvenance> provenance;

  /// Throws Error{LengthMismatch} on a size mismatch or non-finite angle, and
  /// Error{InvalidRegister} if the angles disagree with their provenance.
  void validate(const RegisterSpec& reg) const;

  /// theta_i != +-theta_j to within `min_gap`.
  bool inhomogeneous(int i, int j, double min_gap = 1e-12) const;
};

/// Single-spin S^alpha = sigma^alpha / 2 embedded at position k.
CMatrix spin_operator(const RegisterSpec& reg, int k, Axis axis);

/// S_i . S_j on the register.
CMatrix exchange_hamiltonian(const RegisterSpec& reg, int i, int j);
/// S_i^x S_j^x + S_i^y S_j^y on the register.
CMatrix xy_hamiltonian(const RegisterSpec& reg, int i, int j);

/// Permutation matrix exchanging the states of spins i and j.
CMatrix swap_matrix(const RegisterSpec& reg, int i, int j);

/// exp(-i xi S_i.S_j) = e^{i xi/4} (cos(xi/2) I - i sin(xi/2) SWAP_ij).
Unitary exchange_unitary(const RegisterSpec& reg, int i, int j, double xi);

/// exp(-i phi (S_i^x S_j^x + S_i^y S_j^y)); rotates only inside the
/// {|01>, |10>} block of the pair.
Unitary xy_exchange_unitary(const RegisterSpec& reg, int i, int j, double phi);

/// Product over all spins of exp(-i theta_k S_k^alpha).
Unitary global_field_unitary(const RegisterSpec& reg, const ZeemanPulseParams& p);
Unitary global_field_unitary(const RegisterSpec& reg, Axis axis, std::span<const double> angles);

/// exp(-i theta sigma^alpha / 2) as a 2x2 matrix.
CMatrix spin_rotation(Axis axis, double theta);

/// Zeeman angles for a rectangular-profile pulse. Throws Error{LengthMismatch}
/// or Error{NegativeDuration}.
std::vector<double> zeeman_angles(std::span<const double> g, std::span<const double> field_tesla,
                                  double profile_integral_s,
                                  AngleConvention convention = AngleConvention::Half);

/// U embedded on spins (i, j) of the register: `u` is 4x4 with spin i major.
Unitary embed_two_spin(const RegisterSpec& reg, int i, int j, const CMatrix& u);
/// A 2x2 operator embedded at spin k.
Unitary embed_one_spin(const RegisterSpec& reg, int k, const CMatrix& u);

}  // namespace globalspin
