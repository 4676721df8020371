#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "globalspin/device.hpp"

namespace globalspin {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
}

double parse_number(const std::string& token, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used == token.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  fail(line_no, "bad number '" + token + "'");
}

}  // namespace

std::string serialize_geometry(const DeviceGeometry& g) {
  std::ostringstream out;
  out << "name " << g.name << '\n';
  for (const auto& w : g.wires) {
    out << "wire " << num(w.center.x * 1e9) << ' ' << num(w.center.z * 1e9) << ' '
        << num(w.width * 1e9) << ' ' << num(w.height * 1e9) << ' ' << num(w.current * 1e3) << ' '
        << num(w.critical_current_density) << '\n';
  }
  for (const auto& s : g.sites) {
    out << "site " << num(s.position.x * 1e9) << ' ' << num(s.position.z * 1e9) << ' ' << num(s.g)
        << ' ' << s.row << '\n';
  }
  return out.str();
}

DeviceGeometry parse_geometry(const std::string& text) {
  DeviceGeometry g;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "name") {
      if (tok.size() != 2) fail(line_no, "expected 'name <name>'");
      g.name = tok[1];
    } else if (tok[0] == "wire") {
      if (tok.size() != 7) fail(line_no, "expected 'wire cx cz width height current_mA jc'");
      WireSpec w;
      w.center = {parse_number(tok[1], line_no) * 1e-9, parse_number(tok[2], line_no) * 1e-9};
      w.width = parse_number(tok[3], line_no) * 1e-9;
      w.height = parse_number(tok[4], line_no) * 1e-9;
      w.current = parse_number(tok[5], line_no) * 1e-3;
      w.critical_current_density = parse_number(tok[6], line_no);
      if (!(w.width > 0.0 && w.height > 0.0)) fail(line_no, "wire cross-section must be positive");
      if (w.critical_current_density < 0.0) fail(line_no, "negative critical current density");
      g.wires.push_back(w);
    } else if (tok[0] == "site") {
      if (tok.size() != 4 && tok.size() != 5) fail(line_no, "expected 'site x z g [row]'");
      SpinSite s;
      s.position = {parse_number(tok[1], line_no) * 1e-9, parse_number(tok[2], line_no) * 1e-9};
      s.g = parse_number(tok[3], line_no);
      if (tok.size() == 5) {
        const double r = parse_number(tok[4], line_no);
        if (r != static_cast<int>(r)) fail(line_no, "row must be an integer");
        s.row = static_cast<int>(r);
      }
      g.sites.push_back(s);
    } else {
      fail(line_no, "unknown keyword '" + tok[0] + "'");
    }
  }
  if (g.wires.empty()) throw Error(ErrorCode::ParseError, "geometry has no wires");
  if (g.sites.empty()) throw Error(ErrorCode::ParseError, "geometry has no sites");
  for (const auto& s : g.sites) {
    for (const auto& w : g.wires) {
      if (w.contains(s.position)) throw Error(ErrorCode::ParseError, "a site lies inside a wire");
    }
  }
  return g;
}

DeviceGeometry read_geometry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_geometry(buf.str());
}

DeviceGeometry load_preset(const std::string& name) {
  if (const char* dir = std::getenv("GLOBALSPIN_PRESET_DIR")) {
    const auto path = std::filesystem::path(dir) / (name + ".geom");
    if (std::filesystem::exists(path)) return read_geometry_file(path.string());
  }
  if (name == "paper_device") return paper_device();
  throw Error(ErrorCode::ParseError, "unknown geometry preset '" + name + "'");
}

}  // namespace globalspin
