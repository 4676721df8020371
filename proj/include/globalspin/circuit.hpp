#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "globalspin/spin_register.hpp"

namespace globalspin {

struct ExchangeOp {
  int i = 0;
  int j = 1;
  double xi = 0.0;
};

struct XYExchangeOp {
  int i = 0;
  int j = 1;
  double phi = 0.0;
};

struct GlobalFieldOp {
  Axis axis = Axis::Z;
  std::vector<double> angles;
};

/// One elementary pulse. Angles only; turning them into durations is the
/// scheduler's job, which may use `duration_hint_s` for exchange windows.
struct PulseOp {
  std::variant<ExchangeOp, XYExchangeOp, GlobalFieldOp> kind;
  std::optional<double> duration_hint_s;

  static PulseOp exchange(int i, int j, double xi) { return {ExchangeOp{i, j, xi}, {}}; }
  static PulseOp xy(int i, int j, double phi) { return {XYExchangeOp{i, j, phi}, {}}; }
  static PulseOp field(Axis axis, std::vector<double> angles) {
    return {GlobalFieldOp{axis, std::move(angles)}, {}};
  }

  bool is_field() const { return std::holds_alternative<GlobalFieldOp>(kind); }
  bool is_exchange() const { return !is_field(); }
  /// The op undoing this one (negated angle or angles).
  PulseOp inverse() const;
};

/// Throws Error{IndexOutOfRange}, Error{EqualIndices} or Error{LengthMismatch}.
void validate_op(const RegisterSpec& reg, const PulseOp& op);

Unitary op_unitary(const RegisterSpec& reg, const PulseOp& op);

/// Ordered pulse sequence; ops[0] acts first.
class Circuit {
 public:
  explicit Circuit(RegisterSpec reg) : reg_(reg) {}
  Circuit(RegisterSpec reg, std::vector<PulseOp> ops);

  const RegisterSpec& reg() const noexcept { return reg_; }
  const std::vector<PulseOp>& ops() const noexcept { return ops_; }

  Circuit& append(PulseOp op);
  Circuit& append(const Circuit& later);

  std::size_t step_count() const noexcept { return ops_.size(); }
  std::size_t exchange_count() const;
  std::size_t field_count() const;
  /// Steps when runs of consecutive exchange ops on mutually disjoint pairs
  /// are counted once (they are switched on simultaneously).
  std::size_t layer_count() const;

  /// The circuit run backwards with every op inverted.
  Circuit inverse() const;

 private:
  RegisterSpec reg_;
  std::vector<PulseOp> ops_;
};

/// Ordered product: for ops o1, o2, ... returns ... U(o2) U(o1).
Unitary evaluate(const Circuit& c);

/// Fuses adjacent field ops on the same axis into one pulse (angles add).
/// Two such pulses are a single rectangular pulse whenever both angle lists
/// are proportional to the same device constants.
Circuit merge_adjacent_fields(const Circuit& c);

// Text format, one op per line:
//   EX i j xi
//   XY i j phi
//   GF axis a0 a1 ... aN-1
// Angles are written with 17 significant digits. '#' starts a comment and
// blank lines are skipped. An optional "N <spins>" line fixes the register
// size; otherwise it is taken from the first GF line or the largest index.

std::string format_angle(double value);
std::string serialize(const Circuit& c);
/// Throws Error{ParseError} with the offending line number.
Circuit parse_circuit(const std::string& text);
Circuit read_circuit_file(const std::string& path);
void write_circuit_file(const Circuit& c, const std::string& path);

}  // namespace globalspin
