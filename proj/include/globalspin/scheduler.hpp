#pragma once

#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "globalspin/circuit.hpp"
#include "globalspin/device.hpp"

namespace globalspin {

struct FieldEvent {
  CurrentConfig config = CurrentConfig::Parallel;
  /// Current in wire 0 (wire 1 follows the configuration), mA.
  double current_ma = 0.0;
  int sign() const { return current_ma < 0.0 ? -1 : 1; }
};

struct ExchangePulse {
  int i = 0;
  int j = 1;
  double xi = 0.0;
};

struct ExchangeEvent {
  /// Mutually disjoint pairs switched on together.
  std::vector<ExchangePulse> pairs;
};

struct Event {
  double t_start = 0.0;
  double duration = 0.0;
  std::variant<FieldEvent, ExchangeEvent> payload;

  bool is_field() const { return std::holds_alternative<FieldEvent>(payload); }
  double t_end() const { return t_start + duration; }
};

struct Schedule {
  RegisterSpec reg{1};
  std::vector<Event> events;
  DeviceGeometry geometry;
  AngleConvention convention = AngleConvention::Full;
  int active_row = 0;

  double total_time() const { return events.empty() ? 0.0 : events.back().t_end(); }
  double field_time() const;
};

struct ScheduleOptions {
  int active_row = 0;
  /// Window for exchange ops without a duration hint.
  double exchange_seconds = 10e-9;
};

/// Field op -> one rectangular pulse in the configuration driving its axis,
/// sign and duration fitted to theta_k = sign * rate(g_k) B_k T for the
/// row's sites; zero-angle field ops vanish. Consecutive exchange ops on
/// disjoint pairs with equal windows share one event. Events run back to
/// back from t = 0.
/// Throws UnrealizableAnglesError (angles not proportional to the device
/// constants, y fields, XY couplings) or Error{DurationCapExceeded} (longer
/// than the neighbor pi pulse).
Schedule compile_schedule(const Circuit& c, const DeviceGeometry& g, AngleConvention convention,
                          const ScheduleOptions& options = {});

/// Replays the events: field events through field_profile and zeeman_angles,
/// exchange events through exchange_unitary.
Unitary simulate_schedule(const Schedule& s);

/// Longest field pulse allowed on `axis`: the pi pulse of the weakest
/// neighbor difference in the active row.
double duration_cap(const DeviceGeometry& g, Axis axis, AngleConvention convention, int row);

struct ScheduleCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct ScheduleReport {
  std::vector<ScheduleCheck> checks;
  bool pass = true;
};

/// Checks: PositiveDuration, OverlapViolation, CurrentLimit, PairDisjointness,
/// RowAddressing. Report only; never throws.
ScheduleReport validate_schedule(const Schedule& s, const DeviceGeometry& g);

// Text format:
//   schedule N <spins> geometry <name> convention <half|full> row <row>
//   F t_ns dur_ns config sign |current_mA|
//   E t_ns dur_ns (i,j,xi)[,(k,l,xi)...]
// Times (ns) with 15 significant digits; currents (mA) and xi with 17.
std::string serialize_schedule(const Schedule& s);
/// The geometry is resolved with load_preset. Throws Error{ParseError}.
Schedule parse_schedule(const std::string& text);

/// FNV-1a over the unitary's entries rounded to 1e-10: a short fingerprint
/// that tolerates last-digit noise.
std::string unitary_digest(const Unitary& u);

}  // namespace globalspin
