#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace globalspin {

/// How a measured value is compared with its threshold.
enum class Compare { AtMost, AtLeast, Equal, Within };

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  Compare compare = Compare::AtMost;
  /// Half-width for Within (threshold is then the nominal value).
  double tolerance = 0.0;
  bool pass = false;
};

CheckResult make_check(std::string name, double measured, Compare compare, double threshold,
                       double tolerance = 0.0);

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  /// (label, digest) pairs of the inputs.
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<CheckResult> checks;
  /// Values reported without a pass/fail judgement.
  std::vector<std::pair<std::string, std::string>> info;
  double wall_seconds = 0.0;

  CheckResult& add(CheckResult c);
  void note(std::string key, std::string value);
  bool all_passed() const;

  void write_human(std::ostream& out) const;
  /// One JSON object per line: a header, one per check, one per note, and a summary.
  void write_json_lines(std::ostream& out) const;
};

/// FNV-1a of a byte string as 16 hex digits.
std::string text_digest(const std::string& bytes);

}  // namespace globalspin
