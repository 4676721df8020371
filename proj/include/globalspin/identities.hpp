#pragma once

#include <span>
#include <vector>

#include "globalspin/circuit.hpp"

namespace globalspin {

enum class Equivalence { Exact, UpToGlobalPhase, UpToLocalZ };

const char* to_string(Equivalence e);

struct GateTarget {
  Unitary unitary;
  /// Spins the gate is meant to act on; every other spin must be left alone.
  std::vector<int> acted_spins;
  Equivalence equivalence = Equivalence::UpToGlobalPhase;
};

struct VerificationReport {
  /// phase_distance to the target, after the local z correction for UpToLocalZ.
  double distance = 0.0;
  /// ||U - T||_max, the literal comparison used for Exact targets.
  double exact_deviation = 0.0;
  /// Unit scalar c with U ~ c T.
  Complex global_factor{1.0, 0.0};
  /// Largest ||[U, S_k^a]||_max over spins k outside acted_spins, a in {x, z}.
  double bystander_residual = 0.0;
  /// Fitted z-rotation angle per acted spin (UpToLocalZ only).
  std::vector<double> local_z_angles;
  bool distance_ok = false;
  bool bystander_ok = false;
  bool passed = false;
};

/// Throws Error{DimensionMismatch}.
VerificationReport verify_unitary(const Unitary& u, const GateTarget& t, double tolerance);
VerificationReport verify_target(const Circuit& c, const GateTarget& t, double tolerance);

/// Largest ||[U, S_k^z]||, ||[U, S_k^x]|| over spins k not in `acted`.
double bystander_residual(const RegisterSpec& reg, const Unitary& u, std::span<const int> acted);

/// A circuit together with the gate it is claimed to implement.
struct Construction {
  Circuit circuit;
  GateTarget target;
};

// Builders. Angles for spins outside the pair come from `bystander` (a full
// register-length list whose entries at i and j are ignored). An empty list
// gives the default: theta for the pi-offset "dark" pulses, 0 otherwise.

/// [U(-pi), V^z(theta), U(pi)] swaps the field angles of i and j. On more than
/// two spins the bystanders' rotation is undone by a trailing V^z(-theta),
/// so the target becomes the swapped pulse times the inverse of the original.
Construction swap_conjugation(const RegisterSpec& reg, int i, int j, double theta_i,
                              double theta_j, std::span<const double> bystander = {});

/// The x-dressed swap V^x(theta, theta+pi)^dagger U(pi) V^x(theta, theta+pi).
Circuit tilde_swap(const RegisterSpec& reg, int i, int j, double theta,
                   std::span<const double> bystander = {});

struct ScalarFactor {
  Complex factor{1.0, 0.0};
  /// ||M - factor I||_max; zero when the two sides differ by a pure scalar.
  double deviation = 0.0;
};

/// Measures c in  W e^{-i(a S_i^z + b S_j^z)} W = c e^{+i(a S_j^z + b S_i^z)},
/// W the dressed swap. Any spins beyond the pair are spectators.
ScalarFactor tilde_swap_factor(const RegisterSpec& reg, int i, int j, double theta, double theta_i,
                               double theta_j);

/// Four steps U(pi/2) V^z(theta,theta+pi)^dagger U(pi/2) V^z(theta,theta+pi),
/// target exp(-i pi S_i^z S_j^z) exactly.
Construction cp_circuit(const RegisterSpec& reg, int i, int j, double theta,
                        std::span<const double> bystander = {});

/// diag(1,1,1,-1) on (i, j), compared up to local z rotations.
GateTarget controlled_phase_target(const RegisterSpec& reg, int i, int j);

/// Single-spin x rotation exp(i 2 theta_i S_i^x) from two x pulses and two
/// pi z-flips of spin i, compared up to global phase.
Construction xy_single_spin_circuit(const RegisterSpec& reg, int i, int j, double theta_i,
                                   double theta_j, std::span<const double> bystander = {});

/// Global factor of the pair-level sequence written with the literal pulses
/// (no bystanders), relative to exp(i 2 theta_i S_i^x).
Complex xy_single_spin_literal_factor(double theta_i, double theta_j);

/// How to read the outer y rotations exp(+-i pi/4 (S_i^y - S_j^y)).
enum class OuterRotation {
  /// pi/4 multiplies Pauli matrices: spin-angle pi/2. Produces a ZZ gate.
  Pauli,
  /// pi/4 multiplies spin-1/2 matrices as written.
  Spin,
};

/// Fitted c in exp(-i c tJ S_i^z S_j^z) for the XY controlled-phase sequence.
double xy_cp_zz_normalization(OuterRotation outer = OuterRotation::Pauli);

/// Six steps: outer y rotation, pi x-flip of spin i, XY(tJ), flip, XY(tJ),
/// inverse outer rotation. Target exp(-i c tJ S_i^z S_j^z), c fitted.
Construction xy_cp_circuit(const RegisterSpec& reg, int i, int j, double tJ,
                           OuterRotation outer = OuterRotation::Pauli,
                           std::span<const double> bystander = {});

/// Smallest phase distance of the literal spin-unit sequence (pair only) to
/// any exp(-i c tJ S^z S^z), scanning c.
double xy_cp_spin_reading_residual(double tJ);

/// Replays a two-spin template on each of the disjoint `pairs`. Exchange
/// steps run on all pairs at once; field steps give every pair's first spin
/// the template's spin-0 angle and second spin its spin-1 angle, and spins in
/// no pair the spin-0 angle. Throws Error{OverlappingPairs}.
Circuit parallel_apply(const Circuit& pair_template, std::span<const std::pair<int, int>> pairs,
                       const RegisterSpec& reg);

/// The gate of `pair_template` applied to every pair (identity elsewhere).
Unitary parallel_target(const Unitary& pair_gate, std::span<const std::pair<int, int>> pairs,
                        const RegisterSpec& reg);

}  // namespace globalspin
