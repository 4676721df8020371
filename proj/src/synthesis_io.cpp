#include <sstream>

#include "globalspin/synthesis.hpp"

namespace globalspin {

std::string serialize_problem(const SynthesisProblem& p) {
  std::ostringstream out;
  out << "name " << p.name << '\n'
      << "slots " << p.slot_count << '\n'
      << "exchanges " << p.exchange_slots << '\n'
      << "target " << to_string(p.family) << '\n'
      << "samples " << p.samples << '\n'
      << "tol " << format_angle(p.tolerance) << '\n'
      << "budget " << p.budget << '\n';
  if (p.merged_step_count) out << "merged " << *p.merged_step_count << '\n';
  out << "prune " << (p.prune ? 1 : 0) << '\n'
      << "seed " << p.seed << '\n'
      << "alphabet " << sequence_name(p.alphabet) << '\n';
  return out.str();
}

namespace {

[[noreturn]] void fail(int line_no, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
}

template <class T>
T read_value(std::istringstream& in, int line_no, const std::string& key) {
  T v{};
  if (!(in >> v)) fail(line_no, "bad value for '" + key + "'");
  std::string extra;
  if (in >> extra) fail(line_no, "trailing text after '" + key + "'");
  return v;
}

}  // namespace

SynthesisProblem parse_problem(const std::string& text) {
  SynthesisProblem p;
  bool have_slots = false;
  bool have_exchanges = false;
  bool have_alphabet = false;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key)) continue;
    if (key == "name") {
      p.name = read_value<std::string>(fields, line_no, key);
    } else if (key == "slots") {
      p.slot_count = read_value<int>(fields, line_no, key);
      have_slots = true;
    } else if (key == "exchanges") {
      p.exchange_slots = read_value<int>(fields, line_no, key);
      have_exchanges = true;
    } else if (key == "target") {
      try {
        p.family = parse_target_family(read_value<std::string>(fields, line_no, key));
      } catch (const Error& e) {
        fail(line_no, e.what());
      }
    } else if (key == "samples") {
      p.samples = read_value<int>(fields, line_no, key);
    } else if (key == "tol") {
      p.tolerance = read_value<double>(fields, line_no, key);
    } else if (key == "budget") {
      p.budget = read_value<std::uint64_t>(fields, line_no, key);
    } else if (key == "merged") {
      p.merged_step_count = read_value<int>(fields, line_no, key);
    } else if (key == "prune") {
      p.prune = read_value<int>(fields, line_no, key) != 0;
    } else if (key == "seed") {
      p.seed = read_value<std::uint64_t>(fields, line_no, key);
    } else if (key == "alphabet") {
      for (std::string tok; fields >> tok;) {
        try {
          p.alphabet.push_back(parse_template(tok));
        } catch (const Error& e) {
          fail(line_no, e.what());
        }
      }
      have_alphabet = true;
    } else if (key == "stats" || key == "SEQ") {
      continue;
    } else {
      fail(line_no, "unknown key '" + key + "'");
    }
  }
  if (!have_slots || !have_exchanges || !have_alphabet) {
    throw Error(ErrorCode::ParseError, "problem needs 'slots', 'exchanges' and 'alphabet' lines");
  }
  return p;
}

std::string serialize_result(const SynthesisProblem& p, const SynthesisResult& r) {
  std::ostringstream out;
  out << serialize_problem(p);
  const auto& s = r.stats;
  out << "stats candidates " << s.candidates << " pruned " << s.pruned << " filtered "
      << s.filtered << " evaluated " << s.evaluated << " raw_solutions " << s.raw_solutions
      << " classes " << r.sequences.size() << " budget_exhausted " << (s.budget_exhausted ? 1 : 0)
      << '\n';
  for (std::size_t k = 0; k < r.sequences.size(); ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", r.certificates[k]);
    out << "SEQ " << buf << ' ' << sequence_name(r.sequences[k]) << '\n';
  }
  return out.str();
}

std::vector<TemplateSequence> parse_result_sequences(const std::string& text) {
  std::vector<TemplateSequence> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string key;
    if (!(fields >> key) || key != "SEQ") continue;
    std::string worst;
    fields >> worst;
    TemplateSequence seq;
    for (std::string tok; fields >> tok;) {
      try {
        seq.push_back(parse_template(tok));
      } catch (const Error& e) {
        fail(line_no, e.what());
      }
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace globalspin
