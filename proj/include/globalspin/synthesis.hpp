#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "globalspin/identities.hpp"

namespace globalspin {

/// Angle-pair symbols of the field boxes. Theta and Phi are the small boxes
/// (theta_i, theta_j) and (phi_i, phi_j); Dark is the box (theta, theta + pi).
enum class AngleSymbol { Theta, NegTheta, Phi, NegPhi, Dark, NegDark };

struct PulseTemplate {
  enum class Kind { Exchange, Field };
  Kind kind = Kind::Field;
  /// Exchange angle (Exchange only).
  double xi = 0.0;
  /// Field axis and angle symbol (Field only).
  Axis axis = Axis::Z;
  AngleSymbol symbol = AngleSymbol::Theta;

  static PulseTemplate exchange(double xi);
  static PulseTemplate field(Axis axis, AngleSymbol symbol);

  bool is_exchange() const { return kind == Kind::Exchange; }
  /// "EX", "EX:pi/2", "Z:theta", "X:-dark", ...
  std::string name() const;
  /// The template undoing this one up to a global phase.
  PulseTemplate inverse() const;

  friend bool operator==(const PulseTemplate&, const PulseTemplate&) = default;
};

/// Throws Error{ParseError}.
PulseTemplate parse_template(const std::string& name);

using TemplateSequence = std::vector<PulseTemplate>;

std::string sequence_name(const TemplateSequence& seq);

/// Concrete per-spin angles for every symbol, indexed by axis.
///
/// The pair (i, j) always satisfies theta_i - theta_j = phi_i + phi_j and
/// dark_j = dark_i + pi. Other entries are bystander angles.
struct SymbolBinding {
  int i = 0;
  int j = 1;
  std::array<std::vector<double>, 3> theta;
  std::array<std::vector<double>, 3> phi;
  std::array<std::vector<double>, 3> dark;

  const std::vector<double>& angles(Axis axis, AngleSymbol symbol, std::vector<double>& scratch) const;
};

/// Random draw: theta_i, theta_j uniform in (0.1, pi - 0.1) with
/// |theta_i - theta_j| > 0.05, bystander theta_k in the same range, phi from
/// the device-constant rule phi_k = theta_k (theta_i - theta_j)/(theta_i + theta_j),
/// dark base angle uniform in (0, 2 pi) and bystander dark angles likewise.
SymbolBinding sample_binding(const RegisterSpec& reg, int i, int j, std::mt19937_64& rng);

/// Angles realizable with device constants: theta_k = a_k s with
/// s = rotation / (2 (a_i - a_j)) so that 2 (theta_i - theta_j) = rotation,
/// phi_k = theta_k (a_i - a_j)/(a_i + a_j), dark_k = pi a_k / (a_j - a_i).
/// `a_by_axis[axis]` holds the constants of the configuration driving that axis.
SymbolBinding device_binding(const RegisterSpec& reg, int i, int j, double rotation,
                             const std::array<std::vector<double>, 3>& a_by_axis);

/// The circuit of a template sequence under a binding.
Circuit instantiate(const TemplateSequence& seq, const SymbolBinding& b, const RegisterSpec& reg);

enum class TargetFamily {
  /// V^z(theta) itself: the one-slot self test.
  FieldPair,
  /// V^z with theta_i and theta_j exchanged, bystanders unchanged.
  SwapConjugation,
  /// exp(-i 2 (theta_i - theta_j) S_i^z), identity elsewhere.
  RotationZ,
  /// exp(-i pi S_i^z S_j^z), identity elsewhere.
  ControlledPhase,
};

const char* to_string(TargetFamily f);
TargetFamily parse_target_family(const std::string& text);

GateTarget family_target(TargetFamily f, const SymbolBinding& b, const RegisterSpec& reg);

struct SynthesisProblem {
  std::string name = "custom";
  int slot_count = 0;
  int exchange_slots = 0;
  TemplateSequence alphabet;
  TargetFamily family = TargetFamily::RotationZ;
  /// Draws used during the search.
  int samples = 20;
  double tolerance = tol::kComposite;
  /// Largest number of candidate sequences looked at (pruned ones included).
  std::uint64_t budget = 1'000'000'000;
  /// If set, only sequences with exactly this many steps after fusing
  /// adjacent same-axis field pulses are accepted.
  std::optional<int> merged_step_count;
  /// Skip field words whose bystander product is not the bystander target.
  bool prune = true;
  std::uint64_t seed = 0;

  /// Throws Error{EmptyAlphabet} or Error{InvalidProblem}.
  void validate() const;
};

struct SynthesisStats {
  std::uint64_t candidates = 0;
  std::uint64_t pruned = 0;
  std::uint64_t filtered = 0;
  std::uint64_t evaluated = 0;
  std::uint64_t raw_solutions = 0;
  bool budget_exhausted = false;
  double wall_seconds = 0.0;
};

struct SynthesisResult {
  /// One representative (the lexicographically first) per equivalence class,
  /// in lexicographic order over alphabet positions.
  std::vector<TemplateSequence> sequences;
  /// Worst phase distance over the search samples, per sequence.
  std::vector<double> certificates;
  SynthesisStats stats;
};

/// Candidates are all slot assignments with exactly `exchange_slots` exchange
/// templates, ordered lexicographically by field word first and exchange
/// placement second. Evaluation runs on spins (0, 1) plus one bystander in
/// factored form: a pair 4x4 product and a bystander 2x2 product, which is
/// the three-spin product exactly. The result does not depend on `workers`.
/// When the budget runs out the flag is set and the partial result returned.
/// Throws Error{EmptyAlphabet} or Error{InvalidProblem}.
SynthesisResult enumerate(const SynthesisProblem& problem, unsigned workers = 1);

/// Canonical form modulo global phase: adjacent inverse pairs cancelled and
/// runs of mutually commuting steps sorted.
std::string canonical_key(const TemplateSequence& seq);

struct ReverifyEntry {
  double worst_distance = 0.0;
  double worst_bystander = 0.0;
  bool passed = false;
};

struct ReverifyReport {
  std::vector<ReverifyEntry> entries;
  bool all_passed = true;
};

/// Re-evaluates every sequence through evaluate/verify_target on four spins,
/// pair (1, 2) with bystanders 0 and 3, over fresh draws.
ReverifyReport reverify(const SynthesisProblem& problem, const std::vector<TemplateSequence>& seqs,
                        int fresh_samples, std::uint64_t seed);

// Presets.

/// Caption alphabet: small z boxes with theta or phi, dark boxes in x and z.
TemplateSequence caption_alphabet();
/// 11 slots, 4 exchange-pi, caption alphabet, RotationZ target.
SynthesisProblem fig1a_problem();
/// 12 slots of which two adjacent same-axis field pulses fuse into one:
/// 11 physical steps, 4 exchange-pi, 7 field pulses.
SynthesisProblem fig1a_merged_problem();
SynthesisProblem planted_swap_problem();
SynthesisProblem planted_cp_problem();

/// The reference 12-slot rotation sequence; fusing its adjacent theta and
/// phi boxes gives an 11-step circuit with 4 exchanges and 7 field pulses.
TemplateSequence rotation_z_template();
/// The same sequence conjugated by a global y rotation: it realizes
/// exp(-i 2 (theta_i - theta_j) S_i^x).
TemplateSequence rotation_x_template();

// Text format. Problem:
//   name fig1a
//   slots 11
//   exchanges 4
//   target rotation_z
//   samples 20
//   tol 1e-10
//   budget 1000000000
//   merged 11          (optional)
//   prune 1
//   seed 0
//   alphabet EX Z:theta Z:-theta ...
// Result: the problem header followed by "stats ..." and one
//   "SEQ <worst_distance> <template> ..." line per sequence.

std::string serialize_problem(const SynthesisProblem& p);
/// Throws Error{ParseError}.
SynthesisProblem parse_problem(const std::string& text);
std::string serialize_result(const SynthesisProblem& p, const SynthesisResult& r);
/// Parses the SEQ lines of a result file.
std::vector<TemplateSequence> parse_result_sequences(const std::string& text);

// Global Hadamard search.

struct HadamardAssumptions {
  /// Angle ratio spin 1 / spin 0 of a z pulse (parallel configuration).
  double rho_z = 0.75;
  /// Angle ratio spin 1 / spin 0 of an x pulse (antiparallel configuration).
  double rho_x = 0.5;
  int max_depth = 8;
  int starts = 24;
  double success_distance = tol::kHadamard;
  std::uint64_t seed = 0;
  /// Largest number of structures fitted.
  std::uint64_t budget = 1'000'000;
};

struct StructureFit {
  /// Word over E (exchange), Z, X; no letter repeats back to back.
  std::string word;
  std::vector<double> params;
  double distance = 0.0;
};

struct HadamardResult {
  std::vector<StructureFit> fits;
  /// Index into `fits` of the best structure (shortest among ties).
  std::size_t best = 0;
  bool success = false;
  bool budget_exhausted = false;
  double wall_seconds = 0.0;
};

/// Pair circuit of a structure word with the given parameters. E takes the
/// exchange angle, Z and X take the spin-0 angle t (spin 1 gets rho t).
Circuit hadamard_structure_circuit(const std::string& word, const std::vector<double>& params,
                                   const HadamardAssumptions& a);

/// Fits every structure of length <= max_depth against the two-spin target,
/// multi-start Levenberg-Marquardt on the entries of U - e^{i phi} T.
HadamardResult hadamard8_search(const HadamardAssumptions& a, const Unitary& target);

/// H (x) H on two spins.
Unitary hadamard_pair_target();

}  // namespace globalspin
