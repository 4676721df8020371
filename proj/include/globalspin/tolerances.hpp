#pragma once

// Every numerical threshold used by the library lives here.

namespace globalspin::tol {

/// Algebraic identities between short products of closed-form unitaries.
inline constexpr double kIdentity = 1e-12;
/// Long composed sequences (synthesized circuits, bystander cancellation).
inline constexpr double kComposite = 1e-10;
/// Unitarity invariant ||U^dagger U - I||_max.
inline constexpr double kUnitarity = 1e-12;
/// Hermiticity precondition ||H - H^dagger||_max.
inline constexpr double kHermitian = 1e-12;
/// Commutator checks against single-spin operators.
inline constexpr double kCommutator = 1e-11;
/// Euler compilation and schedule round trips.
inline constexpr double kCompiled = 1e-8;
/// Relative agreement of Zeeman angles with their physical provenance.
inline constexpr double kProvenance = 1e-10;
/// Proportionality of a field pulse's angles to the device constants.
inline constexpr double kRealizable = 1e-9;
/// Hadamard search success threshold.
inline constexpr double kHadamard = 1e-6;

}  // namespace globalspin::tol
