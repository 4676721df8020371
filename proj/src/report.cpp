#include "globalspin/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace globalspin {

namespace {

const char* compare_text(Compare c) {
  switch (c) {
    case Compare::AtMost: return "<=";
    case Compare::AtLeast: return ">=";
    case Compare::Equal: return "==";
    case Compare::Within: return "+-";
  }
  return "?";
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

CheckResult make_check(std::string name, double measured, Compare compare, double threshold,
                       double tolerance) {
  CheckResult c{std::move(name), measured, threshold, compare, tolerance, false};
  switch (compare) {
    case Compare::AtMost: c.pass = measured <= threshold; break;
    case Compare::AtLeast: c.pass = measured >= threshold; break;
    case Compare::Equal: c.pass = measured == threshold; break;
    case Compare::Within: c.pass = std::abs(measured - threshold) <= tolerance; break;
  }
  return c;
}

CheckResult& RunReport::add(CheckResult c) {
  checks.push_back(std::move(c));
  return checks.back();
}

void RunReport::note(std::string key, std::string value) {
  info.emplace_back(std::move(key), std::move(value));
}

bool RunReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

void RunReport::write_human(std::ostream& out) const {
  out << "command: " << command << "\nseed: " << seed << '\n';
  for (const auto& [label, digest] : inputs) out << "input " << label << ": " << digest << '\n';
  for (const auto& [k, v] : info) out << "  " << k << " = " << v << '\n';
  for (const auto& c : checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << ": measured " << g17(c.measured) << ", "
        << compare_text(c.compare) << ' ' << g17(c.threshold);
    if (c.compare == Compare::Within) out << " +- " << g17(c.tolerance);
    out << '\n';
  }
  std::size_t passed = 0;
  for (const auto& c : checks) passed += c.pass ? 1 : 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", wall_seconds);
  out << passed << '/' << checks.size() << " checks passed in " << buf << " s\n";
}

void RunReport::write_json_lines(std::ostream& out) const {
  using nlohmann::json;
  json head{{"type", "run"}, {"command", command}, {"seed", seed}};
  json in = json::object();
  for (const auto& [label, digest] : inputs) in[label] = digest;
  head["inputs"] = in;
  out << head.dump() << '\n';
  for (const auto& [k, v] : info) out << json{{"type", "info"}, {"key", k}, {"value", v}}.dump() << '\n';
  for (const auto& c : checks) {
    json j{{"type", "check"},        {"name", c.name},   {"measured", c.measured},
           {"compare", compare_text(c.compare)}, {"threshold", c.threshold}, {"pass", c.pass}};
    if (c.compare == Compare::Within) j["tolerance"] = c.tolerance;
    out << j.dump() << '\n';
  }
  out << json{{"type", "summary"}, {"checks", checks.size()}, {"pass", all_passed()},
              {"wall_seconds", wall_seconds}}
             .dump()
      << '\n';
}

std::string text_digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace globalspin
