#pragma once

#include <string>
#include <vector>

#include "globalspin/spin_register.hpp"

namespace globalspin {

/// A point in the plane transverse to the wires, meters.
struct Point {
  double x = 0.0;
  double z = 0.0;
};

/// (B^x, B^z) in tesla.
struct FieldXZ {
  double bx = 0.0;
  double bz = 0.0;

  double component(Axis axis) const { return axis == Axis::X ? bx : bz; }
};

struct WireSpec {
  Point center;
  double width = 0.0;
  double height = 0.0;
  /// Amperes, positive along +y.
  double current = 0.0;
  /// A/m^2.
  double critical_current_density = 0.0;

  double area() const { return width * height; }
  double critical_current() const { return critical_current_density * area(); }
  bool contains(Point p) const;
};

struct SpinSite {
  Point position;
  double g = 2.0;
  int row = 0;
};

struct DeviceGeometry {
  std::string name = "custom";
  std::vector<WireSpec> wires;
  std::vector<SpinSite> sites;

  /// Exactly two wires, as in the twin-wire device.
  bool twin_wire_layout() const { return wires.size() == 2; }
  /// Indices of the sites in `row`, in order.
  std::vector<int> row_sites(int row) const;
  std::vector<int> rows() const;
};

enum class CurrentConfig { Parallel, Antiparallel, Custom };

const char* to_string(CurrentConfig c);
/// Throws Error{ParseError}.
CurrentConfig parse_config(const std::string& text);

/// z pulses use the parallel configuration, x pulses the antiparallel one.
/// Throws Error{UnrealizableAngles} for y.
CurrentConfig config_for_axis(Axis axis);
Axis axis_for_config(CurrentConfig c);

/// The geometry with wire 1 driven like wire 0 (parallel) or opposite to
/// it (antiparallel). Custom leaves the currents alone.
DeviceGeometry with_config(const DeviceGeometry& g, CurrentConfig config);
/// The geometry with every current multiplied by `factor`.
DeviceGeometry scaled_currents(const DeviceGeometry& g, double factor);

/// Infinite straight wire along y: B = mu0 I / (2 pi |d|^2) (d_z, -d_x),
/// d = p - center. Throws Error{PointInsideWire}.
FieldXZ line_field(const WireSpec& w, Point p);

/// Uniform current density over the rectangular section, integrated
/// adaptively (Gauss-Kronrod) to the given relative error.
/// Throws Error{PointInsideWire} or Error{QuadratureFailure}.
FieldXZ ribbon_field(const WireSpec& w, Point p, double rel_tol = 1e-6);

enum class FieldModel { Line, Ribbon };

struct FieldProfile {
  std::vector<FieldXZ> fields;
  CurrentConfig config = CurrentConfig::Custom;
};

/// Per-site field summed over wires, with the currents set by `config`.
FieldProfile field_profile(const DeviceGeometry& g, CurrentConfig config,
                           FieldModel model = FieldModel::Line);

/// |B_{k+1} - B_k| along `axis` for consecutive sites of `sites`.
std::vector<double> neighbor_gradients(const FieldProfile& fp, Axis axis,
                                       const std::vector<int>& sites);

struct DeviceConstants {
  Axis axis = Axis::Z;
  /// a_k = g_k B_k / (g_ref B_ref), B_ref the largest-magnitude site field.
  std::vector<double> a;
  /// B_ref in tesla (signed) and the g-factor at that site.
  double amplitude_tesla = 0.0;
  double g_ref = 2.0;
  /// 0 < a_k <= 1 everywhere and a_k != a_{k+1} for consecutive sites.
  bool valid = false;
};

/// Constants of the axis driven by the profile's configuration (z for
/// custom profiles), over the given sites. Throws Error{ZeroFieldSite}.
DeviceConstants device_constants(const FieldProfile& fp, const DeviceGeometry& g,
                                 const std::vector<int>& sites);
DeviceConstants device_constants(const FieldProfile& fp, const DeviceGeometry& g, Axis axis,
                                 const std::vector<int>& sites);

/// T = delta_theta hbar c / (g mu_B delta_B), c = 2 (Half) or 1 (Full).
/// Throws Error{NonpositiveGradient} or Error{NegativeDuration}.
double pulse_duration(double delta_theta, double delta_b, double g, AngleConvention convention);

struct CurrentCheck {
  int wire = 0;
  double current = 0.0;
  double limit = 0.0;
  double margin = 0.0;
  bool pass = false;
};

std::vector<CurrentCheck> validate_currents(const DeviceGeometry& g);

struct SensitivityReport {
  /// Smallest tolerated wire displacement, meters.
  double tolerance_m = 0.0;
  double delta_b = 0.0;
  double max_derivative = 0.0;
  CurrentConfig config = CurrentConfig::Parallel;
};

/// Central differences (step 0.01 nm) of the first neighbor-pair field
/// difference with respect to each wire coordinate, in both configurations;
/// tolerance = per_pulse_error * delta_B / max |d(delta_B)/d pos|, worst case
/// over configurations. Throws Error{NonpositiveGradient} for a
/// non-positive error or a vanishing neighbor difference.
SensitivityReport position_sensitivity(const DeviceGeometry& g, double per_pulse_error);

/// sqrt(logical_error_target) / n_pulses: coherent accumulation.
double error_budget(int n_pulses, double logical_error_target);

double gate_time_estimate(int n_pulses, double pulse_seconds);

/// Twin-wire zig-zag device: wires 200 x 200 nm at x = 200 nm, z = +-100 nm,
/// 0.7 mA, J_c = 2.2e10 A/m^2; four g = 2 sites at x = 0, -100, 0, -100 nm.
DeviceGeometry paper_device();

// Text format, lengths in nm and currents in mA:
//   name <name>
//   wire cx cz width height current_mA jc_A_per_m2
//   site x z g [row]
std::string serialize_geometry(const DeviceGeometry& g);
/// Throws Error{ParseError}.
DeviceGeometry parse_geometry(const std::string& text);
DeviceGeometry read_geometry_file(const std::string& path);
/// "paper_device" or <name>.geom under $GLOBALSPIN_PRESET_DIR (checked first).
/// Throws Error{ParseError} if not found.
DeviceGeometry load_preset(const std::string& name);

}  // namespace globalspin
