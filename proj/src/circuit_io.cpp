#include <cstdio>
#include <fstream>
#include <sstream>

#include "globalspin/circuit.hpp"

namespace globalspin {

std::string format_angle(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string serialize(const Circuit& c) {
  std::ostringstream out;
  out << "N " << c.reg().n_spins() << '\n';
  for (const auto& op : c.ops()) {
    std::visit(
        [&](const auto& o) {
          using T = std::decay_t<decltype(o)>;
          if constexpr (std::is_same_v<T, ExchangeOp>) {
            out << "EX " << o.i << ' ' << o.j << ' ' << format_angle(o.xi);
          } else if constexpr (std::is_same_v<T, XYExchangeOp>) {
            out << "XY " << o.i << ' ' << o.j << ' ' << format_angle(o.phi);
          } else {
            out << "GF " << axis_char(o.axis);
            for (double a : o.angles) out << ' ' << format_angle(a);
          }
        },
        op.kind);
    out << '\n';
  }
  return out.str();
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
}

double parse_number(const std::string& token, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) fail(line_no, "bad number '" + token + "'");
    return v;
  } catch (const std::invalid_argument&) {
    fail(line_no, "bad number '" + token + "'");
  } catch (const std::out_of_range&) {
    fail(line_no, "number out of range '" + token + "'");
  }
}

int parse_index(const std::string& token, int line_no) {
  const double v = parse_number(token, line_no);
  if (v != static_cast<int>(v) || v < 0) fail(line_no, "bad spin index '" + token + "'");
  return static_cast<int>(v);
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int declared = 0;
  int inferred = 0;
  std::vector<std::pair<int, PulseOp>> ops;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const std::string& kw = tok[0];
    if (kw == "N") {
      if (tok.size() != 2) fail(line_no, "expected 'N <spins>'");
      declared = parse_index(tok[1], line_no);
    } else if (kw == "EX" || kw == "XY") {
      if (tok.size() != 4) fail(line_no, "expected '" + kw + " i j angle'");
      const int i = parse_index(tok[1], line_no);
      const int j = parse_index(tok[2], line_no);
      const double a = parse_number(tok[3], line_no);
      inferred = std::max({inferred, i + 1, j + 1});
      ops.emplace_back(line_no, kw == "EX" ? PulseOp::exchange(i, j, a) : PulseOp::xy(i, j, a));
    } else if (kw == "GF") {
      if (tok.size() < 3) fail(line_no, "expected 'GF axis a0 ...'");
      Axis axis;
      try {
        axis = parse_axis(tok[1]);
      } catch (const Error&) {
        fail(line_no, "unknown axis '" + tok[1] + "'");
      }
      std::vector<double> angles;
      for (std::size_t k = 2; k < tok.size(); ++k) angles.push_back(parse_number(tok[k], line_no));
      inferred = std::max(inferred, static_cast<int>(angles.size()));
      ops.emplace_back(line_no, PulseOp::field(axis, std::move(angles)));
    } else {
      fail(line_no, "unknown op '" + kw + "'");
    }
  }
  const int n = declared > 0 ? declared : inferred;
  if (n == 0) fail(line_no, "cannot determine register size of an empty circuit without an 'N' line");
  Circuit c{RegisterSpec(n)};
  for (auto& [ln, op] : ops) {
    try {
      c.append(std::move(op));
    } catch (const Error& e) {
      fail(ln, e.what());
    }
  }
  return c;
}

Circuit read_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

void write_circuit_file(const Circuit& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << serialize(c);
}

}  // namespace globalspin
