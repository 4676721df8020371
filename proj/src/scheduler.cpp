#include "globalspin/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace globalspin {

namespace {

struct AxisDrive {
  CurrentConfig config;
  double nominal_current;       // |I| in wire 0, amperes
  std::vector<double> rate;     // angle per second per site at +nominal current
  double cap;                   // longest pulse, seconds
};

std::vector<int> active_sites(const DeviceGeometry& g, int row) {
  auto sites = g.row_sites(row);
  if (sites.empty()) {
    throw Error(ErrorCode::InvalidRegister, "row " + std::to_string(row) + " has no sites");
  }
  return sites;
}

std::vector<double> site_rates(const DeviceGeometry& driven, Axis axis, AngleConvention convention,
                               const std::vector<int>& sites) {
  const FieldProfile fp = field_profile(driven, CurrentConfig::Custom);
  std::vector<double> out;
  for (int s : sites) {
    const auto k = static_cast<std::size_t>(s);
    out.push_back(zeeman_rate_per_tesla_second(driven.sites[k].g, convention) *
                  fp.fields[k].component(axis));
  }
  return out;
}

DeviceGeometry drive(const DeviceGeometry& g, CurrentConfig config, double current_a) {
  DeviceGeometry out = g;
  if (!out.wires.empty()) out.wires[0].current = current_a;
  return with_config(out, config);
}

AxisDrive axis_drive(const DeviceGeometry& g, Axis axis, AngleConvention convention, int row) {
  if (g.wires.empty()) throw Error(ErrorCode::InvalidRegister, "geometry has no wires");
  AxisDrive d;
  d.config = config_for_axis(axis);
  d.nominal_current = std::abs(g.wires[0].current);
  const auto sites = active_sites(g, row);
  d.rate = site_rates(drive(g, d.config, d.nominal_current), axis, convention, sites);
  double weakest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < d.rate.size(); ++k) {
    weakest = std::min(weakest, std::abs(d.rate[k] - d.rate[k - 1]));
  }
  d.cap = (std::isfinite(weakest) && weakest > 0.0) ? std::numbers::pi / weakest
                                                    : std::numeric_limits<double>::infinity();
  return d;
}

}  // namespace

double Schedule::field_time() const {
  double t = 0.0;
  for (const auto& e : events) {
    if (e.is_field()) t += e.duration;
  }
  return t;
}

double duration_cap(const DeviceGeometry& g, Axis axis, AngleConvention convention, int row) {
  return axis_drive(g, axis, convention, row).cap;
}

Schedule compile_schedule(const Circuit& c, const DeviceGeometry& g, AngleConvention convention,
                          const ScheduleOptions& options) {
  const auto sites = active_sites(g, options.active_row);
  if (static_cast<int>(sites.size()) != c.reg().n_spins()) {
    throw Error(ErrorCode::DimensionMismatch,
                "circuit has " + std::to_string(c.reg().n_spins()) + " spins, row " +
                    std::to_string(options.active_row) + " has " + std::to_string(sites.size()));
  }
  Schedule s;
  s.reg = c.reg();
  s.geometry = g;
  s.convention = convention;
  s.active_row = options.active_row;

  std::optional<AxisDrive> drives[3];
  double t = 0.0;
  const auto& ops = c.ops();
  for (std::size_t idx = 0; idx < ops.size(); ++idx) {
    const PulseOp& op = ops[idx];
    if (const auto* f = std::get_if<GlobalFieldOp>(&op.kind)) {
      if (f->axis == Axis::Y) throw UnrealizableAnglesError(idx, "the wires produce no y field");
      auto& d = drives[static_cast<std::size_t>(f->axis)];
      if (!d) d = axis_drive(g, f->axis, convention, options.active_row);
      // Least-squares signed duration, then an exact proportionality check.
      double num = 0.0;
      double den = 0.0;
      double largest = 0.0;
      for (std::size_t k = 0; k < f->angles.size(); ++k) {
        num += f->angles[k] * d->rate[k];
        den += d->rate[k] * d->rate[k];
        largest = std::max(largest, std::abs(f->angles[k]));
      }
      if (largest == 0.0) continue;
      if (den == 0.0 || d->nominal_current == 0.0) {
        throw UnrealizableAnglesError(idx, "no field on the active row");
      }
      const double signed_t = num / den;
      for (std::size_t k = 0; k < f->angles.size(); ++k) {
        if (std::abs(f->angles[k] - signed_t * d->rate[k]) > tol::kRealizable * std::max(1.0, largest)) {
          throw UnrealizableAnglesError(idx, "angles are not proportional to the device constants");
        }
      }
      const double duration = std::abs(signed_t);
      if (duration > d->cap * (1.0 + 1e-12)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "op %zu: %.6f ns exceeds the %.6f ns cap", idx, duration * 1e9,
                      d->cap * 1e9);
        throw Error(ErrorCode::DurationCapExceeded, buf);
      }
      Event e;
      e.t_start = t;
      e.duration = duration;
      e.payload = FieldEvent{d->config, (signed_t < 0 ? -1.0 : 1.0) * d->nominal_current * 1e3};
      s.events.push_back(std::move(e));
      t += duration;
      continue;
    }
    if (std::holds_alternative<XYExchangeOp>(op.kind)) {
      throw UnrealizableAnglesError(idx, "the device has Heisenberg coupling only");
    }
    const auto& ex = std::get<ExchangeOp>(op.kind);
    const double window = op.duration_hint_s.value_or(options.exchange_seconds);
    if (!(window > 0.0)) throw Error(ErrorCode::NegativeDuration, "exchange window must be positive");
    if (!s.events.empty() && !s.events.back().is_field() && s.events.back().duration == window) {
      auto& prev = std::get<ExchangeEvent>(s.events.back().payload);
      const bool disjoint = std::none_of(prev.pairs.begin(), prev.pairs.end(), [&](const auto& p) {
        return p.i == ex.i || p.i == ex.j || p.j == ex.i || p.j == ex.j;
      });
      if (disjoint) {
        prev.pairs.push_back({ex.i, ex.j, ex.xi});
        continue;
      }
    }
    Event e;
    e.t_start = t;
    e.duration = window;
    e.payload = ExchangeEvent{{{ex.i, ex.j, ex.xi}}};
    s.events.push_back(std::move(e));
    t += window;
  }
  return s;
}

Unitary simulate_schedule(const Schedule& s) {
  const auto sites = active_sites(s.geometry, s.active_row);
  Unitary u = Unitary::identity(s.reg.dim());
  std::vector<double> g;
  for (int k : sites) g.push_back(s.geometry.sites[static_cast<std::size_t>(k)].g);
  for (const auto& e : s.events) {
    if (const auto* f = std::get_if<FieldEvent>(&e.payload)) {
      const Axis axis = axis_for_config(f->config);
      const FieldProfile fp = field_profile(drive(s.geometry, f->config, f->current_ma * 1e-3),
                                            CurrentConfig::Custom);
      std::vector<double> b;
      for (int k : sites) b.push_back(fp.fields[static_cast<std::size_t>(k)].component(axis));
      u = global_field_unitary(s.reg, axis, zeeman_angles(g, b, e.duration, s.convention)) * u;
    } else {
      for (const auto& p : std::get<ExchangeEvent>(e.payload).pairs) {
        u = exchange_unitary(s.reg, p.i, p.j, p.xi) * u;
      }
    }
  }
  return u;
}

ScheduleReport validate_schedule(const Schedule& s, const DeviceGeometry& g) {
  ScheduleReport rep;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rep.checks.push_back({name, pass, detail});
    rep.pass = rep.pass && pass;
  };

  std::string bad;
  for (std::size_t k = 0; k < s.events.size(); ++k) {
    if (!(s.events[k].duration > 0.0)) bad += " event " + std::to_string(k);
  }
  add("PositiveDuration", bad.empty(), bad.empty() ? "all events" : "non-positive:" + bad);

  bad.clear();
  for (std::size_t k = 1; k < s.events.size(); ++k) {
    const auto& a = s.events[k - 1];
    const auto& b = s.events[k];
    if (b.t_start < a.t_end() - 1e-9 * std::max(1e-9, a.duration)) {
      bad += " " + std::to_string(k - 1) + "/" + std::to_string(k);
    }
  }
  add("OverlapViolation", bad.empty(), bad.empty() ? "sequential" : "overlapping events:" + bad);

  bad.clear();
  double worst = 0.0;
  double limit = std::numeric_limits<double>::infinity();
  for (const auto& w : g.wires) limit = std::min(limit, w.critical_current());
  for (std::size_t k = 0; k < s.events.size(); ++k) {
    if (const auto* f = std::get_if<FieldEvent>(&s.events[k].payload)) {
      const double amps = std::abs(f->current_ma) * 1e-3;
      worst = std::max(worst, amps);
      if (amps > limit) bad += " event " + std::to_string(k);
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max %.6f mA, limit %.6f mA", worst * 1e3, limit * 1e3);
  add("CurrentLimit", bad.empty(), bad.empty() ? buf : std::string(buf) + ";" + bad);

  bad.clear();
  std::string outside;
  for (std::size_t k = 0; k < s.events.size(); ++k) {
    const auto* x = std::get_if<ExchangeEvent>(&s.events[k].payload);
    if (!x) continue;
    std::vector<int> used;
    for (const auto& p : x->pairs) {
      for (int q : {p.i, p.j}) {
        if (std::find(used.begin(), used.end(), q) != used.end()) bad += " event " + std::to_string(k);
        used.push_back(q);
        if (q < 0 || q >= s.reg.n_spins() || p.i == p.j) outside += " event " + std::to_string(k);
      }
    }
  }
  add("PairDisjointness", bad.empty(), bad.empty() ? "disjoint" : "shared spins:" + bad);
  const auto row = g.row_sites(s.active_row);
  const bool row_ok = outside.empty() && static_cast<int>(row.size()) == s.reg.n_spins();
  add("RowAddressing", row_ok,
      row_ok ? "exchange confined to row " + std::to_string(s.active_row)
             : "pairs outside row " + std::to_string(s.active_row) + ":" + outside);
  return rep;
}

std::string serialize_schedule(const Schedule& s) {
  std::ostringstream out;
  out << "schedule N " << s.reg.n_spins() << " geometry " << s.geometry.name << " convention "
      << to_string(s.convention) << " row " << s.active_row << '\n';
  char buf[128];
  for (const auto& e : s.events) {
    std::snprintf(buf, sizeof buf, "%.15g %.15g", e.t_start * 1e9, e.duration * 1e9);
    if (const auto* f = std::get_if<FieldEvent>(&e.payload)) {
      out << "F " << buf << ' ' << to_string(f->config) << ' ' << (f->sign() < 0 ? '-' : '+');
      std::snprintf(buf, sizeof buf, " %.17g", std::abs(f->current_ma));
      out << buf << '\n';
    } else {
      out << "E " << buf << ' ';
      const auto& pairs = std::get<ExchangeEvent>(e.payload).pairs;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (k) out << ',';
        out << '(' << pairs[k].i << ',' << pairs[k].j << ',' << format_angle(pairs[k].xi) << ')';
      }
      out << '\n';
    }
  }
  return out.str();
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
}

double number(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used == tok.size()) return v;
  } catch (const std::exception&) {
  }
  fail(line_no, "bad number '" + tok + "'");
}

}  // namespace

Schedule parse_schedule(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool header = false;
  Schedule s;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "schedule") {
      if (tok.size() != 9 || tok[1] != "N" || tok[3] != "geometry" || tok[5] != "convention" ||
          tok[7] != "row") {
        fail(line_no, "expected 'schedule N n geometry name convention c row r'");
      }
      s.reg = RegisterSpec(static_cast<int>(number(tok[2], line_no)));
      try {
        s.geometry = load_preset(tok[4]);
        s.convention = parse_convention(tok[6]);
      } catch (const Error& e) {
        fail(line_no, e.what());
      }
      s.active_row = static_cast<int>(number(tok[8], line_no));
      header = true;
      continue;
    }
    if (!header) fail(line_no, "missing schedule header");
    if (tok.size() < 4) fail(line_no, "truncated event");
    Event e;
    e.t_start = number(tok[1], line_no) * 1e-9;
    e.duration = number(tok[2], line_no) * 1e-9;
    if (tok[0] == "F") {
      if (tok.size() != 6) fail(line_no, "expected 'F t dur config sign |current_mA|'");
      FieldEvent f;
      try {
        f.config = parse_config(tok[3]);
      } catch (const Error& err) {
        fail(line_no, err.what());
      }
      const double magnitude = number(tok[5], line_no);
      if ((tok[4] != "-" && tok[4] != "+") || magnitude < 0.0) {
        fail(line_no, "expected a sign and a current magnitude");
      }
      f.current_ma = tok[4] == "-" ? -magnitude : magnitude;
      e.payload = f;
    } else if (tok[0] == "E") {
      if (tok.size() != 4) fail(line_no, "expected 'E t dur (i,j,xi),...'");
      ExchangeEvent x;
      std::string body = tok[3];
      std::size_t pos = 0;
      while (pos < body.size()) {
        if (body[pos] == ',') ++pos;
        if (pos >= body.size() || body[pos] != '(') fail(line_no, "expected '('");
        const auto close = body.find(')', pos);
        if (close == std::string::npos) fail(line_no, "missing ')'");
        std::string inner = body.substr(pos + 1, close - pos - 1);
        std::replace(inner.begin(), inner.end(), ',', ' ');
        std::istringstream parts(inner);
        std::string a, b, c, extra;
        if (!(parts >> a >> b >> c) || (parts >> extra)) fail(line_no, "expected (i,j,xi)");
        x.pairs.push_back({static_cast<int>(number(a, line_no)), static_cast<int>(number(b, line_no)),
                           number(c, line_no)});
        pos = close + 1;
      }
      e.payload = x;
    } else {
      fail(line_no, "unknown event '" + tok[0] + "'");
    }
    s.events.push_back(std::move(e));
  }
  if (!header) throw Error(ErrorCode::ParseError, "missing schedule header");
  return s;
}

std::string unitary_digest(const Unitary& u) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&](double v) {
    auto q = static_cast<long long>(std::llround(v * 1e10));
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint64_t>(q >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  const CMatrix& m = u.matrix();
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      mix(m(r, c).real());
      mix(m(r, c).imag());
    }
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace globalspin
