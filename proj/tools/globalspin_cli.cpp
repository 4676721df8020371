// globalspin: verification, synthesis, device analysis and scheduling.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 bad input,
// 3 search budget exhausted without a solution, 4 unrealizable pulse.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "globalspin/euler.hpp"
#include "globalspin/scheduler.hpp"
#include "globalspin/suites.hpp"
#include "globalspin/synthesis.hpp"

using namespace globalspin;

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kInputError = 2, kBudget = 3, kUnrealizable = 4 };

struct Common {
  std::uint64_t seed = 0;
  std::string format = "human";
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << text;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int emit(RunReport& rep, const Common& common, std::chrono::steady_clock::time_point t0) {
  rep.seed = common.seed;
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (common.format == "json-lines") {
    rep.write_json_lines(std::cout);
  } else {
    rep.write_human(std::cout);
  }
  return rep.all_passed() ? kPass : kCheckFailed;
}

std::string command_line(int argc, char** argv) {
  std::string out;
  for (int k = 0; k < argc; ++k) {
    if (k) out += ' ';
    out += argv[k];
  }
  return out;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  double tol = tol::kIdentity;
  double composite_tol = tol::kComposite;
  int draws = 1000;
};

int cmd_verify(const VerifyArgs& a, const Common& c, RunReport& rep) {
  const auto t0 = std::chrono::steady_clock::now();
  rep.note("suite", a.suite);
  rep.note("draws", std::to_string(a.draws));
  identity_suite(a.suite, c.seed, a.draws, a.tol, a.composite_tol, rep);
  return emit(rep, c, t0);
}

// ---------------------------------------------------------------------------

struct SynthArgs {
  std::string problem = "fig1a_merged";
  std::optional<std::uint64_t> budget;
  std::optional<int> samples;
  std::optional<double> tol;
  unsigned workers = 1;
  bool require_solution = false;
  int verify_samples = 100;
  std::string out;
  // Hadamard search.
  int depth = 8;
  int starts = 24;
  double rho_z = 0.75;
  double rho_x = 0.5;
};

int cmd_hadamard(const SynthArgs& a, const Common& c, RunReport& rep,
                 std::chrono::steady_clock::time_point t0) {
  HadamardAssumptions h;
  h.max_depth = a.depth;
  h.starts = a.starts;
  h.rho_z = a.rho_z;
  h.rho_x = a.rho_x;
  h.seed = c.seed;
  if (a.budget) h.budget = *a.budget;
  rep.note("assumption.rho_z", fmt("%.6g", h.rho_z));
  rep.note("assumption.rho_x", fmt("%.6g", h.rho_x));
  rep.note("assumption.max_depth", std::to_string(h.max_depth));
  rep.note("assumption.starts", std::to_string(h.starts));
  const HadamardResult r = hadamard8_search(h, hadamard_pair_target());
  const auto& best = r.fits.at(r.best);
  rep.note("structures_fitted", std::to_string(r.fits.size()));
  rep.note("best_structure", best.word.empty() ? "(empty)" : best.word);
  rep.note("best_distance", fmt("%.6e", best.distance));
  rep.note("outcome", r.success ? "sequence found" : "no structure reached the tolerance");
  if (r.budget_exhausted && a.require_solution && !r.success) {
    emit(rep, c, t0);
    return kBudget;
  }
  rep.add(make_check("hadamard8.search_completed", r.budget_exhausted ? 0.0 : 1.0, Compare::Equal, 1.0));
  if (a.require_solution) {
    rep.add(make_check("hadamard8.best_distance", best.distance, Compare::AtMost, h.success_distance));
  }
  if (!a.out.empty()) {
    std::ostringstream out;
    out << "hadamard8 rho_z " << format_angle(h.rho_z) << " rho_x " << format_angle(h.rho_x)
        << " depth " << h.max_depth << " starts " << h.starts << " seed " << h.seed << '\n';
    for (const auto& f : r.fits) {
      out << "FIT " << (f.word.empty() ? "-" : f.word) << ' ' << fmt("%.6e", f.distance);
      for (double p : f.params) out << ' ' << format_angle(p);
      out << '\n';
    }
    out << "# best\n" << serialize(hadamard_structure_circuit(best.word, best.params, h));
    write_text(a.out, out.str());
  }
  return emit(rep, c, t0);
}

int cmd_synthesize(const SynthArgs& a, const Common& c, RunReport& rep) {
  const auto t0 = std::chrono::steady_clock::now();
  if (a.problem == "hadamard8") return cmd_hadamard(a, c, rep, t0);
  SynthesisProblem p;
  if (a.problem == "fig1a") {
    p = fig1a_problem();
  } else if (a.problem == "fig1a_merged") {
    p = fig1a_merged_problem();
  } else if (a.problem == "planted_swap") {
    p = planted_swap_problem();
  } else if (a.problem == "planted_cp") {
    p = planted_cp_problem();
  } else {
    const std::string text = read_text(a.problem);
    rep.inputs.emplace_back(a.problem, text_digest(text));
    p = parse_problem(text);
  }
  if (a.budget) p.budget = *a.budget;
  if (a.samples) p.samples = *a.samples;
  if (a.tol) p.tolerance = *a.tol;
  p.seed = c.seed;
  const SynthesisResult r = enumerate(p, a.workers);
  const auto& s = r.stats;
  rep.note("problem", p.name);
  rep.note("candidates", std::to_string(s.candidates));
  rep.note("pruned", std::to_string(s.pruned));
  rep.note("filtered", std::to_string(s.filtered));
  rep.note("evaluated", std::to_string(s.evaluated));
  rep.note("raw_solutions", std::to_string(s.raw_solutions));
  rep.note("solutions", std::to_string(r.sequences.size()));
  rep.note("search_seconds", fmt("%.3f", s.wall_seconds));
  rep.note("candidates_per_second", fmt("%.4g", s.wall_seconds > 0 ? s.candidates / s.wall_seconds : 0.0));
  rep.note("budget_exhausted", s.budget_exhausted ? "yes" : "no");
  if (!s.budget_exhausted && r.sequences.empty()) {
    rep.note("outcome", "no sequence exists within the searched alphabet and slot counts");
  }
  std::mt19937_64 rng(c.seed);
  const RegisterSpec four(4);
  for (std::size_t k = 0; k < r.sequences.size() && k < 5; ++k) {
    const Circuit merged =
        merge_adjacent_fields(instantiate(r.sequences[k], sample_binding(four, 1, 2, rng), four));
    rep.note("solution" + std::to_string(k),
             sequence_name(r.sequences[k]) + " [" + std::to_string(merged.step_count()) + " steps, " +
                 std::to_string(merged.exchange_count()) + " exchanges]");
  }
  if (!a.out.empty()) write_text(a.out, serialize_result(p, r));

  if (r.sequences.empty() && s.budget_exhausted && a.require_solution) {
    emit(rep, c, t0);
    return kBudget;
  }
  if (a.require_solution) {
    rep.add(make_check("synthesis.solutions", static_cast<double>(r.sequences.size()), Compare::AtLeast, 1.0));
  }
  if (!r.sequences.empty()) {
    const auto rv = reverify(p, r.sequences, a.verify_samples, c.seed + 1);
    double worst = 0.0;
    for (const auto& e : rv.entries) worst = std::max(worst, e.worst_distance);
    rep.add(make_check("synthesis.reverify_worst_distance", worst, Compare::AtMost, p.tolerance));
    rep.add(make_check("synthesis.reverify_all_passed", rv.all_passed ? 1.0 : 0.0, Compare::Equal, 1.0));
  }
  return emit(rep, c, t0);
}

// ---------------------------------------------------------------------------

struct GeometryArgs {
  std::string preset;
  std::string geometry;
};

DeviceGeometry load_geometry(const GeometryArgs& g, RunReport& rep) {
  if (!g.geometry.empty()) {
    const std::string text = read_text(g.geometry);
    rep.inputs.emplace_back(g.geometry, text_digest(text));
    DeviceGeometry out = parse_geometry(text);
    return out;
  }
  DeviceGeometry out = load_preset(g.preset.empty() ? "paper_device" : g.preset);
  rep.inputs.emplace_back("preset:" + out.name, text_digest(serialize_geometry(out)));
  return out;
}

struct DeviceArgs {
  GeometryArgs geo;
  std::string config = "both";
  std::string csv;
};

int cmd_device(const DeviceArgs& a, const Common& c, RunReport& rep) {
  const auto t0 = std::chrono::steady_clock::now();
  DeviceGeometry g = load_geometry(a.geo, rep);
  if (a.config != "both") {
    const CurrentConfig cfg = parse_config(a.config);
    const FieldProfile fp = field_profile(g, cfg);
    const Axis axis = axis_for_config(cfg);
    const Axis off = axis == Axis::Z ? Axis::X : Axis::Z;
    double off_max = 0.0;
    for (const auto& f : fp.fields) off_max = std::max(off_max, std::abs(f.component(off)));
    rep.note("config", a.config);
    rep.note(std::string("max_abs_B") + axis_char(off) + "_T", fmt("%.3e", off_max));
  }
  std::ofstream csv_file;
  std::ostream* csv = nullptr;
  if (a.csv == "-") {
    csv = &std::cerr;
  } else if (!a.csv.empty()) {
    csv_file.open(a.csv);
    if (!csv_file) throw Error(ErrorCode::ParseError, "cannot write '" + a.csv + "'");
    csv = &csv_file;
  }
  device_suite(g, rep, csv);
  return emit(rep, c, t0);
}

// ---------------------------------------------------------------------------

struct ScheduleArgs {
  std::string input;
  std::string builtin;
  GeometryArgs geo;
  std::string convention = "full";
  int row = 0;
  std::string out;
  bool simulate_only = false;
  std::string expect_digest;
  double exchange_ns = 10.0;
};

Circuit builtin_circuit(const std::string& name, const DeviceGeometry& g, int row) {
  const auto constants = row_axis_constants(g, row);
  const RegisterSpec reg(static_cast<int>(g.row_sites(row).size()));
  if (name == "cp") return device_cp_circuit(g, row, 0, 1).circuit;
  if (name == "rotation_z") return rotation_block(reg, 0, 1, Axis::Z, std::numbers::pi / 2, constants);
  if (name == "rotation_x") return rotation_block(reg, 0, 1, Axis::X, std::numbers::pi / 2, constants);
  if (name == "hadamard") {
    CMatrix h(2, 2);
    h << 1.0, 1.0, 1.0, -1.0;
    return su2_compile(h / std::sqrt(2.0), 0, 1, constants, reg);
  }
  throw Error(ErrorCode::ParseError, "unknown builtin circuit '" + name + "'");
}

int cmd_schedule(const ScheduleArgs& a, const Common& c, RunReport& rep) {
  const auto t0 = std::chrono::steady_clock::now();
  if (a.simulate_only) {
    if (a.input.empty()) throw Error(ErrorCode::ParseError, "--simulate-only needs a schedule file");
    const std::string text = read_text(a.input);
    rep.inputs.emplace_back(a.input, text_digest(text));
    const Schedule s = parse_schedule(text);
    const std::string digest = unitary_digest(simulate_schedule(s));
    rep.note("events", std::to_string(s.events.size()));
    rep.note("unitary_digest", digest);
    if (!a.expect_digest.empty()) {
      rep.add(make_check("schedule.digest_matches", digest == a.expect_digest ? 1.0 : 0.0, Compare::Equal, 1.0));
    }
    return emit(rep, c, t0);
  }
  DeviceGeometry g = load_geometry(a.geo, rep);
  Circuit circuit{RegisterSpec(1)};
  if (!a.builtin.empty()) {
    circuit = builtin_circuit(a.builtin, g, a.row);
    rep.note("circuit", "builtin " + a.builtin);
  } else {
    if (a.input.empty()) throw Error(ErrorCode::ParseError, "need a circuit file or --builtin");
    const std::string text = read_text(a.input);
    rep.inputs.emplace_back(a.input, text_digest(text));
    circuit = parse_circuit(text);
  }
  ScheduleOptions opt;
  opt.active_row = a.row;
  opt.exchange_seconds = a.exchange_ns * 1e-9;
  const Schedule s = compile_schedule(circuit, g, parse_convention(a.convention), opt);
  const double rt = phase_distance(simulate_schedule(s), evaluate(circuit));
  rep.note("steps", std::to_string(circuit.step_count()));
  rep.note("events", std::to_string(s.events.size()));
  rep.note("total_time_ns", fmt("%.6f", s.total_time() * 1e9));
  rep.note("field_time_ns", fmt("%.6f", s.field_time() * 1e9));
  rep.note("unitary_digest", unitary_digest(simulate_schedule(s)));
  rep.add(make_check("schedule.round_trip_distance", rt, Compare::AtMost, tol::kCompiled));
  for (const auto& chk : validate_schedule(s, g).checks) {
    rep.note("validate." + chk.name, chk.detail);
    rep.add(make_check("schedule." + chk.name, chk.pass ? 1.0 : 0.0, Compare::Equal, 1.0));
  }
  const std::string text = serialize_schedule(s);
  if (!a.out.empty()) {
    write_text(a.out, text);
  } else if (c.format != "json-lines") {
    std::cout << text;
  }
  return emit(rep, c, t0);
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Random seed (default 0)");
  sub->add_option("--format", c.format, "human or json-lines")
      ->check(CLI::IsMember({"human", "json-lines"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"globalspin: pulse sequences for spin qubits under a global magnetic field"};
  app.require_subcommand(1);
  Common common;

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run the circuit identity suites");
  verify->add_option("--suite", va.suite, "all|swap|tilde|cp|xy|xycp|parallel");
  verify->add_option("--tol", va.tol, "Tolerance for pair-level identities");
  verify->add_option("--composite-tol", va.composite_tol, "Tolerance for four-spin and parallel checks");
  verify->add_option("--draws", va.draws, "Random parameter draws per identity")->check(CLI::PositiveNumber);
  add_common(verify, common);

  SynthArgs sa;
  auto* synth = app.add_subcommand("synthesize", "Search for pulse sequences");
  synth->add_option("problem", sa.problem,
                    "Problem file or preset: fig1a, fig1a_merged, planted_swap, planted_cp, hadamard8");
  synth->add_option("--budget", sa.budget, "Candidate (or structure) cap");
  synth->add_option("--samples", sa.samples, "Random draws during the search");
  synth->add_option("--tol", sa.tol, "Acceptance tolerance");
  synth->add_option("--workers", sa.workers, "Worker threads")->check(CLI::PositiveNumber);
  synth->add_flag("--require-solution", sa.require_solution, "Fail unless a sequence is found");
  synth->add_option("--verify-samples", sa.verify_samples, "Fresh draws for re-verification");
  synth->add_option("--out", sa.out, "Result file");
  synth->add_option("--depth", sa.depth, "hadamard8: maximum structure length");
  synth->add_option("--starts", sa.starts, "hadamard8: fits per structure");
  synth->add_option("--rho-z", sa.rho_z, "hadamard8: z pulse angle ratio spin 1 / spin 0");
  synth->add_option("--rho-x", sa.rho_x, "hadamard8: x pulse angle ratio spin 1 / spin 0");
  add_common(synth, common);

  DeviceArgs da;
  auto* device = app.add_subcommand("device", "Fields, gradients and timing of a wire geometry");
  device->add_option("--preset", da.geo.preset, "Preset name (paper_device or $GLOBALSPIN_PRESET_DIR/<name>.geom)");
  device->add_option("--geometry", da.geo.geometry, "Geometry file");
  device->add_option("--config", da.config, "parallel|antiparallel|both");
  device->add_option("--csv", da.csv, "Write the per-site field table as CSV ('-' for stderr)");
  add_common(device, common);

  ScheduleArgs sc;
  auto* schedule = app.add_subcommand("schedule", "Lower a circuit to a timed device schedule");
  schedule->add_option("input", sc.input, "Circuit file (or schedule file with --simulate-only)");
  schedule->add_option("--builtin", sc.builtin, "cp|rotation_z|rotation_x|hadamard on the device");
  schedule->add_option("--preset", sc.geo.preset, "Geometry preset");
  schedule->add_option("--geometry", sc.geo.geometry, "Geometry file");
  schedule->add_option("--convention", sc.convention, "half|full");
  schedule->add_option("--row", sc.row, "Active row");
  schedule->add_option("--exchange-ns", sc.exchange_ns, "Default exchange window");
  schedule->add_option("--out", sc.out, "Schedule file");
  schedule->add_flag("--simulate-only", sc.simulate_only, "Replay a schedule file and print its digest");
  schedule->add_option("--expect-digest", sc.expect_digest, "Digest the replay must match");
  add_common(schedule, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  RunReport rep;
  rep.command = command_line(argc, argv);
  try {
    if (*verify) return cmd_verify(va, common, rep);
    if (*synth) return cmd_synthesize(sa, common, rep);
    if (*device) return cmd_device(da, common, rep);
    if (*schedule) return cmd_schedule(sc, common, rep);
  } catch (const UnrealizableAnglesError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnrealizable;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::UnrealizableAngles:
      case ErrorCode::DurationCapExceeded: return kUnrealizable;
      case ErrorCode::BudgetExceeded: return kBudget;
      default: return kInputError;
    }
  }
  return kInputError;
}
