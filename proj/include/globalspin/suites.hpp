#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "globalspin/device.hpp"
#include "globalspin/euler.hpp"
#include "globalspin/report.hpp"
#include "globalspin/scheduler.hpp"

namespace globalspin {

inline constexpr const char* kIdentitySuites[] = {"swap", "tilde", "cp", "xy", "xycp", "parallel"};

/// Runs one identity suite ("all" runs every suite) for `draws` random
/// parameter draws and appends its checks to `rep`. Pair-level checks use
/// `identity_tol`, four-spin and parallel checks `composite_tol`.
/// Throws Error{ParseError} for an unknown suite.
void identity_suite(const std::string& suite, std::uint64_t seed, int draws, double identity_tol,
                    double composite_tol, RunReport& rep);

/// Field table, gradients, device constants, pulse durations, current
/// limits, error budget and sensitivity of a geometry. Reference checks
/// against the published estimates are added for the paper_device preset.
/// `csv`, if given, receives the per-site field table.
void device_suite(const DeviceGeometry& g, RunReport& rep, std::ostream* csv = nullptr);

/// Device constants of the row for z (parallel) and x (antiparallel) pulses.
AxisConstants row_axis_constants(const DeviceGeometry& g, int row);

/// Four-step controlled phase on (i, j) with dark pulses realizable on the device.
Construction device_cp_circuit(const DeviceGeometry& g, int row, int i, int j);

}  // namespace globalspin
