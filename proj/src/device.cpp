#include "globalspin/device.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "globalspin/constants.hpp"

namespace globalspin {

bool WireSpec::contains(Point p) const {
  return std::abs(p.x - center.x) <= width / 2 && std::abs(p.z - center.z) <= height / 2;
}

std::vector<int> DeviceGeometry::row_sites(int row) const {
  std::vector<int> out;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (sites[k].row == row) out.push_back(static_cast<int>(k));
  }
  return out;
}

std::vector<int> DeviceGeometry::rows() const {
  std::vector<int> out;
  for (const auto& s : sites) {
    if (std::find(out.begin(), out.end(), s.row) == out.end()) out.push_back(s.row);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const char* to_string(CurrentConfig c) {
  switch (c) {
    case CurrentConfig::Parallel: return "parallel";
    case CurrentConfig::Antiparallel: return "antiparallel";
    case CurrentConfig::Custom: return "custom";
  }
  return "?";
}

CurrentConfig parse_config(const std::string& text) {
  for (CurrentConfig c : {CurrentConfig::Parallel, CurrentConfig::Antiparallel, CurrentConfig::Custom}) {
    if (text == to_string(c)) return c;
  }
  throw Error(ErrorCode::ParseError, "unknown current configuration '" + text + "'");
}

CurrentConfig config_for_axis(Axis axis) {
  switch (axis) {
    case Axis::Z: return CurrentConfig::Parallel;
    case Axis::X: return CurrentConfig::Antiparallel;
    case Axis::Y: break;
  }
  throw Error(ErrorCode::UnrealizableAngles, "the wires produce no y field");
}

Axis axis_for_config(CurrentConfig c) { return c == CurrentConfig::Antiparallel ? Axis::X : Axis::Z; }

DeviceGeometry with_config(const DeviceGeometry& g, CurrentConfig config) {
  DeviceGeometry out = g;
  if (config == CurrentConfig::Custom || out.wires.size() < 2) return out;
  const double i0 = out.wires[0].current;
  out.wires[1].current = config == CurrentConfig::Parallel ? i0 : -i0;
  return out;
}

DeviceGeometry scaled_currents(const DeviceGeometry& g, double factor) {
  DeviceGeometry out = g;
  for (auto& w : out.wires) w.current *= factor;
  return out;
}

FieldXZ line_field(const WireSpec& w, Point p) {
  const double dx = p.x - w.center.x;
  const double dz = p.z - w.center.z;
  const double r2 = dx * dx + dz * dz;
  if (r2 == 0.0 || (w.area() > 0.0 && w.contains(p))) {
    throw Error(ErrorCode::PointInsideWire, "field point lies inside the wire");
  }
  const double k = phys::kMu0 * w.current / (2.0 * std::numbers::pi * r2);
  return {k * dz, -k * dx};
}

FieldXZ ribbon_field(const WireSpec& w, Point p, double rel_tol) {
  if (w.contains(p)) throw Error(ErrorCode::PointInsideWire, "field point lies inside the wire");
  if (!(w.width > 0.0 && w.height > 0.0)) return line_field(w, p);
  using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  // Integrate in nanometres; the adaptive error estimate misbehaves at SI scale.
  constexpr double kNm = 1e9;
  const double px = p.x * kNm, pz = p.z * kNm;
  const double x0 = (w.center.x - w.width / 2) * kNm;
  const double x1 = (w.center.x + w.width / 2) * kNm;
  const double z0 = (w.center.z - w.height / 2) * kNm;
  const double z1 = (w.center.z + w.height / 2) * kNm;
  const double k = phys::kMu0 * w.current / (w.area() * 2.0 * std::numbers::pi) / kNm;
  double worst_inner = 0.0;

  auto integrate = [&](bool x_component) {
    auto inner = [&](double xs) {
      auto f = [&](double zs) {
        const double dx = px - xs;
        const double dz = pz - zs;
        const double r2 = dx * dx + dz * dz;
        return (x_component ? dz : -dx) / r2;
      };
      double err = 0.0;
      double l1 = 0.0;
      const double v = Quad::integrate(f, z0, z1, 15, rel_tol * 1e-2, &err, &l1);
      worst_inner = std::max(worst_inner, l1 > 0.0 ? err / l1 : 0.0);
      return v;
    };
    double err = 0.0;
    double l1 = 0.0;
    const double v = Quad::integrate(inner, x0, x1, 15, rel_tol * 1e-1, &err, &l1);
    if (!std::isfinite(v) || (l1 > 0.0 && err > rel_tol * l1)) {
      throw Error(ErrorCode::QuadratureFailure, "ribbon field quadrature did not converge");
    }
    return v;
  };

  FieldXZ out{k * integrate(true), k * integrate(false)};
  if (worst_inner > rel_tol) {
    throw Error(ErrorCode::QuadratureFailure, "ribbon field inner quadrature did not converge");
  }
  return out;
}

FieldProfile field_profile(const DeviceGeometry& g, CurrentConfig config, FieldModel model) {
  const DeviceGeometry driven = with_config(g, config);
  FieldProfile fp;
  fp.config = config;
  for (const auto& s : driven.sites) {
    FieldXZ total;
    for (const auto& w : driven.wires) {
      const FieldXZ b = model == FieldModel::Line ? line_field(w, s.position) : ribbon_field(w, s.position);
      total.bx += b.bx;
      total.bz += b.bz;
    }
    fp.fields.push_back(total);
  }
  return fp;
}

std::vector<double> neighbor_gradients(const FieldProfile& fp, Axis axis,
                                       const std::vector<int>& sites) {
  std::vector<double> out;
  for (std::size_t k = 1; k < sites.size(); ++k) {
    const auto a = static_cast<std::size_t>(sites[k - 1]);
    const auto b = static_cast<std::size_t>(sites[k]);
    out.push_back(std::abs(fp.fields.at(b).component(axis) - fp.fields.at(a).component(axis)));
  }
  return out;
}

DeviceConstants device_constants(const FieldProfile& fp, const DeviceGeometry& g,
                                 const std::vector<int>& sites) {
  return device_constants(fp, g, axis_for_config(fp.config), sites);
}

DeviceConstants device_constants(const FieldProfile& fp, const DeviceGeometry& g, Axis axis,
                                 const std::vector<int>& sites) {
  DeviceConstants dc;
  dc.axis = axis;
  double best = -1.0;
  std::vector<double> gb;
  for (int s : sites) {
    const auto k = static_cast<std::size_t>(s);
    const double b = fp.fields.at(k).component(axis);
    if (std::abs(b) < 1e-18) {
      throw Error(ErrorCode::ZeroFieldSite, "site " + std::to_string(s) + " sees no " +
                                                std::string(1, axis_char(axis)) + " field");
    }
    gb.push_back(g.sites.at(k).g * b);
    if (std::abs(gb.back()) > best) {
      best = std::abs(gb.back());
      dc.amplitude_tesla = b;
      dc.g_ref = g.sites.at(k).g;
    }
  }
  const double ref = dc.g_ref * dc.amplitude_tesla;
  dc.valid = !gb.empty();
  for (std::size_t k = 0; k < gb.size(); ++k) {
    dc.a.push_back(gb[k] / ref);
    if (!(dc.a.back() > 0.0 && dc.a.back() <= 1.0)) dc.valid = false;
    if (k > 0 && dc.a[k] == dc.a[k - 1]) dc.valid = false;
  }
  return dc;
}

double pulse_duration(double delta_theta, double delta_b, double g, AngleConvention convention) {
  if (!(delta_b > 0.0)) throw Error(ErrorCode::NonpositiveGradient, "field increment must be positive");
  if (delta_theta < 0.0) throw Error(ErrorCode::NegativeDuration, "negative angle increment");
  return delta_theta / (zeeman_rate_per_tesla_second(g, convention) * delta_b);
}

std::vector<CurrentCheck> validate_currents(const DeviceGeometry& g) {
  std::vector<CurrentCheck> out;
  for (std::size_t k = 0; k < g.wires.size(); ++k) {
    CurrentCheck c;
    c.wire = static_cast<int>(k);
    c.current = g.wires[k].current;
    c.limit = g.wires[k].critical_current();
    c.margin = c.limit - std::abs(c.current);
    c.pass = c.margin >= 0.0;
    out.push_back(c);
  }
  return out;
}

SensitivityReport position_sensitivity(const DeviceGeometry& g, double per_pulse_error) {
  if (!(per_pulse_error > 0.0)) {
    throw Error(ErrorCode::NonpositiveGradient, "per-pulse error must be positive");
  }
  const auto rows = g.rows();
  if (rows.empty()) throw Error(ErrorCode::InvalidRegister, "geometry has no sites");
  const auto sites = g.row_sites(rows.front());
  if (sites.size() < 2) throw Error(ErrorCode::InvalidRegister, "need two sites in a row");
  const auto s0 = static_cast<std::size_t>(sites[0]);
  const auto s1 = static_cast<std::size_t>(sites[1]);
  constexpr double kStep = 0.01e-9;

  SensitivityReport best;
  best.tolerance_m = std::numeric_limits<double>::infinity();
  for (CurrentConfig config : {CurrentConfig::Parallel, CurrentConfig::Antiparallel}) {
    const Axis axis = axis_for_config(config);
    const DeviceGeometry driven = with_config(g, config);
    auto delta = [&](const DeviceGeometry& geo) {
      const auto fp = field_profile(geo, CurrentConfig::Custom);
      return fp.fields[s1].component(axis) - fp.fields[s0].component(axis);
    };
    const double db = delta(driven);
    if (std::abs(db) < 1e-15) continue;
    double max_deriv = 0.0;
    for (std::size_t w = 0; w < driven.wires.size(); ++w) {
      for (int coord = 0; coord < 2; ++coord) {
        DeviceGeometry plus = driven;
        DeviceGeometry minus = driven;
        (coord == 0 ? plus.wires[w].center.x : plus.wires[w].center.z) += kStep;
        (coord == 0 ? minus.wires[w].center.x : minus.wires[w].center.z) -= kStep;
        max_deriv = std::max(max_deriv, std::abs(delta(plus) - delta(minus)) / (2.0 * kStep));
      }
    }
    if (max_deriv == 0.0) continue;
    const double t = per_pulse_error * std::abs(db) / max_deriv;
    if (t < best.tolerance_m) {
      best.tolerance_m = t;
      best.delta_b = std::abs(db);
      best.max_derivative = max_deriv;
      best.config = config;
    }
  }
  if (!std::isfinite(best.tolerance_m)) {
    throw Error(ErrorCode::NonpositiveGradient, "no neighbor field difference to protect");
  }
  return best;
}

double error_budget(int n_pulses, double logical_error_target) {
  if (n_pulses < 1) throw Error(ErrorCode::InvalidProblem, "need at least one pulse");
  return std::sqrt(logical_error_target) / n_pulses;
}

double gate_time_estimate(int n_pulses, double pulse_seconds) { return n_pulses * pulse_seconds; }

DeviceGeometry paper_device() {
  DeviceGeometry g;
  g.name = "paper_device";
  for (double z : {100e-9, -100e-9}) {
    WireSpec w;
    w.center = {200e-9, z};
    w.width = 200e-9;
    w.height = 200e-9;
    w.current = 0.7e-3;
    w.critical_current_density = 2.2e10;
    g.wires.push_back(w);
  }
  for (int k = 0; k < 4; ++k) {
    SpinSite s;
    s.position = {k % 2 == 0 ? 0.0 : -100e-9, 0.0};
    g.sites.push_back(s);
  }
  return g;
}

}  // namespace globalspin
