#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "globalspin/synthesis.hpp"
#include "support.hpp"

using namespace globalspin;
using namespace gs_test;

namespace {

using S = AngleSymbol;

SynthesisProblem reduced_cp_problem() {
  SynthesisProblem p = planted_cp_problem();
  p.name = "reduced_cp";
  p.alphabet.push_back(PulseTemplate::field(Axis::Z, S::Theta));
  p.alphabet.push_back(PulseTemplate::field(Axis::Z, S::NegTheta));
  p.alphabet.push_back(PulseTemplate::exchange(kPi));
  p.slot_count = 4;
  p.exchange_slots = 2;
  return p;
}

/// Every slot assignment with the right exchange count, checked one by one
/// through instantiate and verify_target on three spins. Returns canonical keys.
std::set<std::string> brute_force(const SynthesisProblem& p, int samples) {
  const RegisterSpec three(3);
  std::mt19937_64 rng(12345);
  std::vector<SymbolBinding> draws;
  for (int s = 0; s < samples; ++s) draws.push_back(sample_binding(three, 0, 1, rng));
  std::set<std::string> keys;
  const std::size_t a = p.alphabet.size();
  std::vector<std::size_t> digit(static_cast<std::size_t>(p.slot_count), 0);
  while (true) {
    TemplateSequence seq;
    int ex = 0;
    for (std::size_t d : digit) {
      seq.push_back(p.alphabet[d]);
      ex += p.alphabet[d].is_exchange();
    }
    if (ex == p.exchange_slots) {
      bool ok = true;
      for (const auto& b : draws) {
        const auto v = verify_target(instantiate(seq, b, three), family_target(p.family, b, three), p.tolerance);
        if (!v.passed) {
          ok = false;
          break;
        }
      }
      if (ok && (!p.merged_step_count ||
                 merge_adjacent_fields(instantiate(seq, draws[0], three)).step_count() ==
                     static_cast<std::size_t>(*p.merged_step_count))) {
        keys.insert(canonical_key(seq));
      }
    }
    std::size_t k = 0;
    while (k < digit.size() && ++digit[k] == a) digit[k++] = 0;
    if (k == digit.size()) break;
  }
  return keys;
}

std::set<std::string> keys_of(const SynthesisResult& r) {
  std::set<std::string> out;
  for (const auto& s : r.sequences) out.insert(canonical_key(s));
  return out;
}

TemplateSequence seq(const std::string& text) {
  TemplateSequence t;
  std::istringstream in(text);
  for (std::string tok; in >> tok;) t.push_back(parse_template(tok));
  return t;
}

bool contains(const SynthesisResult& r, const std::string& text) {
  const std::string key = canonical_key(seq(text));
  return std::any_of(r.sequences.begin(), r.sequences.end(),
                     [&](const auto& s) { return canonical_key(s) == key; });
}

}  // namespace

TEST(Templates, NamesRoundTrip) {
  for (const auto& t : caption_alphabet()) EXPECT_EQ(parse_template(t.name()), t);
  EXPECT_EQ(parse_template("EX:pi/2"), PulseTemplate::exchange(kPi / 2));
  EXPECT_EQ(parse_template("X:-dark").inverse(), parse_template("X:dark"));
  for (const char* bad : {"", "EX:", "Q:theta", "Z:rho", "Z", "EX:abc"}) {
    EXPECT_THROW(parse_template(bad), Error) << bad;
  }
}

TEST(Templates, SampleBindingSatisfiesConstraints) {
  auto rng = rng_for(40);
  const RegisterSpec reg(4);
  for (int d = 0; d < 200; ++d) {
    const auto b = sample_binding(reg, 1, 2, rng);
    for (std::size_t ax = 0; ax < 3; ++ax) {
      if (b.theta[ax].empty()) continue;
      EXPECT_NEAR(b.theta[ax][1] - b.theta[ax][2], b.phi[ax][1] + b.phi[ax][2], 1e-12);
      EXPECT_NEAR(b.dark[ax][2] - b.dark[ax][1], kPi, 1e-12);
    }
  }
}

TEST(Templates, DeviceBindingFollowsConstants) {
  std::array<std::vector<double>, 3> a;
  a[static_cast<std::size_t>(Axis::Z)] = {1.0, 0.75, 1.0, 0.75};
  a[static_cast<std::size_t>(Axis::X)] = {1.0, 0.5, 1.0, 0.5};
  const RegisterSpec reg(4);
  const double rot = 0.9;
  const auto b = device_binding(reg, 0, 1, rot, a);
  for (Axis axis : {Axis::Z, Axis::X}) {
    const auto ax = static_cast<std::size_t>(axis);
    EXPECT_NEAR(2.0 * (b.theta[ax][0] - b.theta[ax][1]), rot, 1e-12);
    EXPECT_NEAR(b.theta[ax][0] - b.theta[ax][1], b.phi[ax][0] + b.phi[ax][1], 1e-12);
    EXPECT_NEAR(b.dark[ax][1] - b.dark[ax][0], kPi, 1e-12);
    for (int k = 0; k < 4; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      EXPECT_NEAR(b.theta[ax][kk] / a[ax][kk], b.theta[ax][0] / a[ax][0], 1e-12);
      EXPECT_NEAR(b.dark[ax][kk] / a[ax][kk], b.dark[ax][0] / a[ax][0], 1e-12);
    }
  }
}

TEST(Templates, RotationTemplatesRealizeSingleSpinRotations) {
  auto rng = rng_for(41);
  const RegisterSpec reg(4);
  for (int d = 0; d < 100; ++d) {
    const auto b = sample_binding(reg, 1, 2, rng);
    const Circuit cz = instantiate(rotation_z_template(), b, reg);
    EXPECT_TRUE(verify_target(cz, family_target(TargetFamily::RotationZ, b, reg), tol::kComposite).passed);
    const Circuit merged = merge_adjacent_fields(cz);
    EXPECT_EQ(merged.step_count(), 11u);
    EXPECT_EQ(merged.exchange_count(), 4u);
    EXPECT_EQ(merged.field_count(), 7u);

    const auto zs = static_cast<std::size_t>(Axis::Z);
    const double rot = 2.0 * (b.theta[zs][1] - b.theta[zs][2]);
    // Oracle: exp(-i rot S_1^x), from hand Paulis.
    const CMatrix oracle = taylor_expm(on_spin(pauli('x') / 2.0, 1, 4), rot);
    SymbolBinding bx = b;
    const auto xs = static_cast<std::size_t>(Axis::X);
    std::swap(bx.theta[xs], bx.theta[zs]);
    std::swap(bx.phi[xs], bx.phi[zs]);
    std::swap(bx.dark[xs], bx.dark[zs]);
    const Circuit cx = instantiate(rotation_x_template(), bx, reg);
    EXPECT_LE(phase_distance(evaluate(cx), Unitary::from_matrix(oracle)), tol::kComposite);
  }
}

TEST(Synthesis, PlantedSequencesAreFound) {
  const auto swap = enumerate(planted_swap_problem());
  ASSERT_EQ(swap.sequences.size(), 1u);
  EXPECT_EQ(sequence_name(swap.sequences[0]), "EX Z:theta EX");
  const auto cp = enumerate(planted_cp_problem());
  EXPECT_TRUE(contains(cp, "EX:pi/2 Z:-dark EX:pi/2 Z:dark"));
  for (double c : cp.certificates) EXPECT_LE(c, tol::kComposite);
}

TEST(Synthesis, PrunedSearchEqualsBruteForce) {
  for (SynthesisProblem p : {reduced_cp_problem(), planted_swap_problem(), planted_cp_problem()}) {
    const auto pruned = enumerate(p);
    p.prune = false;
    const auto plain = enumerate(p);
    EXPECT_EQ(keys_of(pruned), keys_of(plain)) << p.name;
    EXPECT_EQ(keys_of(pruned), brute_force(p, 6)) << p.name;
    EXPECT_FALSE(pruned.sequences.empty()) << p.name;
  }
}

TEST(Synthesis, PruningIsLosslessOnShortRotationAlphabet) {
  SynthesisProblem p = fig1a_merged_problem();
  p.name = "short_swap";
  p.slot_count = 8;
  p.exchange_slots = 2;
  p.merged_step_count.reset();
  p.family = TargetFamily::SwapConjugation;
  const auto pruned = enumerate(p);
  p.prune = false;
  const auto plain = enumerate(p);
  EXPECT_EQ(keys_of(pruned), keys_of(plain));
  EXPECT_GT(pruned.stats.pruned, 0u);
  EXPECT_EQ(plain.stats.pruned, 0u);
}

TEST(Synthesis, ResultIndependentOfWorkerCount) {
  SynthesisProblem p = fig1a_merged_problem();
  p.budget = 120'000'000;
  const auto one = enumerate(p, 1);
  const auto three = enumerate(p, 3);
  EXPECT_EQ(serialize_result(p, one), serialize_result(p, three));
  const auto again = enumerate(p, 1);
  EXPECT_EQ(serialize_result(p, one), serialize_result(p, again));
}

TEST(Synthesis, BudgetTruncatesToAPrefix) {
  SynthesisProblem p = reduced_cp_problem();
  const auto full = enumerate(p);
  EXPECT_FALSE(full.stats.budget_exhausted);
  p.budget = full.stats.candidates / 2;
  const auto part = enumerate(p);
  EXPECT_TRUE(part.stats.budget_exhausted);
  EXPECT_EQ(part.stats.candidates, p.budget);
  const auto all = keys_of(full);
  for (const auto& k : keys_of(part)) EXPECT_TRUE(all.count(k)) << k;
}

TEST(Synthesis, LiteralElevenSlotProblemHasNoSolution) {
  const auto r = enumerate(fig1a_problem());
  EXPECT_FALSE(r.stats.budget_exhausted);
  EXPECT_TRUE(r.sequences.empty());
}

TEST(Synthesis, CanonicalKeyCancelsAndSortsCommutingRuns) {
  EXPECT_EQ(canonical_key(seq("Z:theta Z:-theta EX")), canonical_key(seq("EX")));
  EXPECT_EQ(canonical_key(seq("EX Z:theta Z:phi EX")), canonical_key(seq("EX Z:phi Z:theta EX")));
  EXPECT_NE(canonical_key(seq("EX Z:theta X:dark EX")), canonical_key(seq("EX X:dark Z:theta EX")));
  EXPECT_NE(canonical_key(seq("EX Z:theta EX")), canonical_key(seq("EX Z:phi EX")));
}

TEST(Synthesis, ReverifyRejectsBrokenSequence) {
  const SynthesisProblem p = fig1a_merged_problem();
  TemplateSequence good = rotation_z_template();
  TemplateSequence bad = good;
  bad[3] = PulseTemplate::field(Axis::Z, S::NegTheta);
  const auto rep = reverify(p, {good, bad}, 20, 7);
  ASSERT_EQ(rep.entries.size(), 2u);
  EXPECT_TRUE(rep.entries[0].passed);
  EXPECT_FALSE(rep.entries[1].passed);
  EXPECT_FALSE(rep.all_passed);
}

TEST(Synthesis, ProblemValidation) {
  SynthesisProblem p = planted_swap_problem();
  p.alphabet.clear();
  try {
    enumerate(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyAlphabet);
  }
  p = planted_swap_problem();
  p.exchange_slots = 5;
  EXPECT_THROW(p.validate(), Error);
  p = planted_swap_problem();
  p.alphabet.push_back(p.alphabet[0]);
  EXPECT_THROW(p.validate(), Error);
  p = planted_swap_problem();
  p.tolerance = 0.0;
  EXPECT_THROW(p.validate(), Error);
}

TEST(SynthesisIO, ProblemRoundTrip) {
  for (const auto& p : {fig1a_problem(), fig1a_merged_problem(), planted_swap_problem(), planted_cp_problem()}) {
    const std::string text = serialize_problem(p);
    EXPECT_EQ(serialize_problem(parse_problem(text)), text);
  }
  try {
    parse_problem("slots 3\nexchanges 1\nalphabet EX Z:theta\nfoo 1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos);
  }
  EXPECT_THROW(parse_problem("slots 3\nalphabet EX\n"), Error);
  EXPECT_THROW(parse_problem("slots x\nexchanges 1\nalphabet EX\n"), Error);
}

TEST(SynthesisIO, ResultRoundTrip) {
  const auto p = planted_cp_problem();
  const auto r = enumerate(p);
  const auto seqs = parse_result_sequences(serialize_result(p, r));
  ASSERT_EQ(seqs.size(), r.sequences.size());
  for (std::size_t k = 0; k < seqs.size(); ++k) EXPECT_EQ(seqs[k], r.sequences[k]);
}

TEST(Hadamard, StructureCircuitMatchesWord) {
  HadamardAssumptions a;
  const Circuit c = hadamard_structure_circuit("EZX", {0.1, 0.2, 0.3}, a);
  EXPECT_EQ(c.step_count(), 3u);
  EXPECT_EQ(c.exchange_count(), 1u);
  EXPECT_THROW(hadamard_structure_circuit("EZX", {0.1}, a), Error);
  EXPECT_THROW(hadamard_structure_circuit("EQ", {0.1, 0.2}, a), Error);
}

TEST(Hadamard, ShortSearchOnRandomTargetFailsDeterministically) {
  auto rng = rng_for(42);
  HadamardAssumptions a;
  a.max_depth = 3;
  a.starts = 4;
  const Unitary target = Unitary::from_matrix(haar_unitary(rng, 4));
  const auto r1 = hadamard8_search(a, target);
  const auto r2 = hadamard8_search(a, target);
  EXPECT_FALSE(r1.success);
  ASSERT_EQ(r1.fits.size(), r2.fits.size());
  EXPECT_EQ(r1.best, r2.best);
  for (std::size_t k = 0; k < r1.fits.size(); ++k) EXPECT_EQ(r1.fits[k].distance, r2.fits[k].distance);
}

TEST(Hadamard, FitRecoversPlantedStructure) {
  HadamardAssumptions a;
  a.max_depth = 3;
  a.starts = 8;
  const Unitary target = evaluate(hadamard_structure_circuit("ZEX", {0.7, 1.9, -0.4}, a));
  const auto r = hadamard8_search(a, target);
  EXPECT_TRUE(r.success);
  EXPECT_LE(r.fits[r.best].distance, a.success_distance);
}

TEST(Hadamard, BudgetStopsEarly) {
  HadamardAssumptions a;
  a.max_depth = 4;
  a.starts = 2;
  a.budget = 5;
  const auto r = hadamard8_search(a, hadamard_pair_target());
  EXPECT_TRUE(r.budget_exhausted);
  EXPECT_EQ(r.fits.size(), 5u);
}
