#include "globalspin/synthesis.hpp"

#include <algorithm>
#include <cctype>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <thread>

namespace globalspin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

const char* symbol_name(AngleSymbol s) {
  switch (s) {
    case AngleSymbol::Theta: return "theta";
    case AngleSymbol::NegTheta: return "-theta";
    case AngleSymbol::Phi: return "phi";
    case AngleSymbol::NegPhi: return "-phi";
    case AngleSymbol::Dark: return "dark";
    case AngleSymbol::NegDark: return "-dark";
  }
  return "?";
}

AngleSymbol negate(AngleSymbol s) {
  switch (s) {
    case AngleSymbol::Theta: return AngleSymbol::NegTheta;
    case AngleSymbol::NegTheta: return AngleSymbol::Theta;
    case AngleSymbol::Phi: return AngleSymbol::NegPhi;
    case AngleSymbol::NegPhi: return AngleSymbol::Phi;
    case AngleSymbol::Dark: return AngleSymbol::NegDark;
    case AngleSymbol::NegDark: return AngleSymbol::Dark;
  }
  return s;
}

std::size_t axis_slot(Axis a) { return static_cast<std::size_t>(a); }

}  // namespace

PulseTemplate PulseTemplate::exchange(double xi) {
  PulseTemplate t;
  t.kind = Kind::Exchange;
  t.xi = xi;
  return t;
}

PulseTemplate PulseTemplate::field(Axis axis, AngleSymbol symbol) {
  PulseTemplate t;
  t.kind = Kind::Field;
  t.axis = axis;
  t.symbol = symbol;
  return t;
}

std::string PulseTemplate::name() const {
  if (kind == Kind::Exchange) {
    if (xi == kPi) return "EX";
    if (xi == kPi / 2) return "EX:pi/2";
    return "EX:" + format_angle(xi);
  }
  std::string out(1, static_cast<char>(std::toupper(axis_char(axis))));
  return out + ":" + symbol_name(symbol);
}

PulseTemplate PulseTemplate::inverse() const {
  if (kind == Kind::Exchange) return exchange(-xi);
  return field(axis, negate(symbol));
}

PulseTemplate parse_template(const std::string& name) {
  if (name == "EX") return PulseTemplate::exchange(kPi);
  if (name == "EX:pi/2") return PulseTemplate::exchange(kPi / 2);
  if (name.rfind("EX:", 0) == 0) {
    try {
      std::size_t used = 0;
      const double xi = std::stod(name.substr(3), &used);
      if (used == name.size() - 3) return PulseTemplate::exchange(xi);
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::ParseError, "bad exchange template '" + name + "'");
  }
  if (name.size() < 3 || name[1] != ':') {
    throw Error(ErrorCode::ParseError, "bad template '" + name + "'");
  }
  const Axis axis = parse_axis(name.substr(0, 1));
  const std::string sym = name.substr(2);
  for (AngleSymbol s : {AngleSymbol::Theta, AngleSymbol::NegTheta, AngleSymbol::Phi,
                        AngleSymbol::NegPhi, AngleSymbol::Dark, AngleSymbol::NegDark}) {
    if (sym == symbol_name(s)) return PulseTemplate::field(axis, s);
  }
  throw Error(ErrorCode::ParseError, "unknown angle symbol in '" + name + "'");
}

std::string sequence_name(const TemplateSequence& seq) {
  std::string out;
  for (const auto& t : seq) {
    if (!out.empty()) out += ' ';
    out += t.name();
  }
  return out;
}

const std::vector<double>& SymbolBinding::angles(Axis axis, AngleSymbol symbol,
                                                 std::vector<double>& scratch) const {
  const std::size_t a = axis_slot(axis);
  const std::vector<double>* base = nullptr;
  switch (symbol) {
    case AngleSymbol::Theta:
    case AngleSymbol::NegTheta: base = &theta[a]; break;
    case AngleSymbol::Phi:
    case AngleSymbol::NegPhi: base = &phi[a]; break;
    case AngleSymbol::Dark:
    case AngleSymbol::NegDark: base = &dark[a]; break;
  }
  if (base->empty()) {
    throw Error(ErrorCode::InvalidProblem,
                std::string("no binding for ") + axis_char(axis) + ":" + symbol_name(symbol));
  }
  if (symbol == AngleSymbol::Theta || symbol == AngleSymbol::Phi || symbol == AngleSymbol::Dark) {
    return *base;
  }
  scratch.resize(base->size());
  for (std::size_t k = 0; k < base->size(); ++k) scratch[k] = -(*base)[k];
  return scratch;
}

SymbolBinding sample_binding(const RegisterSpec& reg, int i, int j, std::mt19937_64& rng) {
  reg.check_pair(i, j);
  std::uniform_real_distribution<double> small(0.1, kPi - 0.1);
  std::uniform_real_distribution<double> full(0.0, kTwoPi);
  const auto n = static_cast<std::size_t>(reg.n_spins());
  const auto ui = static_cast<std::size_t>(i);
  const auto uj = static_cast<std::size_t>(j);
  SymbolBinding b;
  b.i = i;
  b.j = j;
  for (std::size_t a = 0; a < 3; ++a) {
    auto& th = b.theta[a];
    th.resize(n);
    for (auto& x : th) x = small(rng);
    while (std::abs(th[ui] - th[uj]) <= 0.05) th[uj] = small(rng);
    const double ratio = (th[ui] - th[uj]) / (th[ui] + th[uj]);
    b.phi[a].resize(n);
    for (std::size_t k = 0; k < n; ++k) b.phi[a][k] = th[k] * ratio;
    auto& d = b.dark[a];
    d.resize(n);
    for (auto& x : d) x = full(rng);
    d[uj] = d[ui] + kPi;
  }
  return b;
}

SymbolBinding device_binding(const RegisterSpec& reg, int i, int j, double rotation,
                             const std::array<std::vector<double>, 3>& a_by_axis) {
  reg.check_pair(i, j);
  const auto n = static_cast<std::size_t>(reg.n_spins());
  SymbolBinding b;
  b.i = i;
  b.j = j;
  for (std::size_t ax = 0; ax < 3; ++ax) {
    const auto& a = a_by_axis[ax];
    if (a.empty()) continue;
    if (a.size() != n) {
      throw Error(ErrorCode::LengthMismatch, "device constants do not match the register");
    }
    const double ai = a[static_cast<std::size_t>(i)];
    const double aj = a[static_cast<std::size_t>(j)];
    if (ai == aj || ai + aj == 0.0) {
      throw Error(ErrorCode::UnrealizableAngles, "equal device constants on the coupled pair");
    }
    const double s = rotation / (2.0 * (ai - aj));
    const double ratio = (ai - aj) / (ai + aj);
    const double s_dark = kPi / (aj - ai);
    b.theta[ax].resize(n);
    b.phi[ax].resize(n);
    b.dark[ax].resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      b.theta[ax][k] = a[k] * s;
      b.phi[ax][k] = a[k] * s * ratio;
      b.dark[ax][k] = a[k] * s_dark;
    }
  }
  return b;
}

Circuit instantiate(const TemplateSequence& seq, const SymbolBinding& b, const RegisterSpec& reg) {
  Circuit c(reg);
  std::vector<double> scratch;
  for (const auto& t : seq) {
    if (t.is_exchange()) {
      c.append(PulseOp::exchange(b.i, b.j, t.xi));
    } else {
      c.append(PulseOp::field(t.axis, b.angles(t.axis, t.symbol, scratch)));
    }
  }
  return c;
}

const char* to_string(TargetFamily f) {
  switch (f) {
    case TargetFamily::FieldPair: return "field_pair";
    case TargetFamily::SwapConjugation: return "swap_conjugation";
    case TargetFamily::RotationZ: return "rotation_z";
    case TargetFamily::ControlledPhase: return "controlled_phase";
  }
  return "?";
}

TargetFamily parse_target_family(const std::string& text) {
  for (TargetFamily f : {TargetFamily::FieldPair, TargetFamily::SwapConjugation,
                         TargetFamily::RotationZ, TargetFamily::ControlledPhase}) {
    if (text == to_string(f)) return f;
  }
  throw Error(ErrorCode::ParseError, "unknown target family '" + text + "'");
}

GateTarget family_target(TargetFamily f, const SymbolBinding& b, const RegisterSpec& reg) {
  const auto& th = b.theta[axis_slot(Axis::Z)];
  const auto ui = static_cast<std::size_t>(b.i);
  const auto uj = static_cast<std::size_t>(b.j);
  std::vector<int> everyone(static_cast<std::size_t>(reg.n_spins()));
  for (int k = 0; k < reg.n_spins(); ++k) everyone[static_cast<std::size_t>(k)] = k;
  switch (f) {
    case TargetFamily::FieldPair:
      return {global_field_unitary(reg, Axis::Z, th), everyone, Equivalence::UpToGlobalPhase};
    case TargetFamily::SwapConjugation: {
      auto swapped = th;
      std::swap(swapped[ui], swapped[uj]);
      return {global_field_unitary(reg, Axis::Z, swapped), everyone,
              Equivalence::UpToGlobalPhase};
    }
    case TargetFamily::RotationZ:
      return {embed_one_spin(reg, b.i, spin_rotation(Axis::Z, 2.0 * (th[ui] - th[uj]))),
              {b.i, b.j},
              Equivalence::UpToGlobalPhase};
    case TargetFamily::ControlledPhase: {
      CMatrix zz = CMatrix::Zero(4, 4);
      for (int r = 0; r < 4; ++r) {
        const double si = (r & 2) ? -0.5 : 0.5;
        const double sj = (r & 1) ? -0.5 : 0.5;
        zz(r, r) = std::exp(Complex(0, -kPi * si * sj));
      }
      return {embed_two_spin(reg, b.i, b.j, zz), {b.i, b.j}, Equivalence::UpToGlobalPhase};
    }
  }
  throw Error(ErrorCode::InvalidProblem, "unknown target family");
}

void SynthesisProblem::validate() const {
  if (alphabet.empty()) throw Error(ErrorCode::EmptyAlphabet, "synthesis alphabet is empty");
  const bool has_ex =
      std::any_of(alphabet.begin(), alphabet.end(), [](const auto& t) { return t.is_exchange(); });
  const bool has_field =
      std::any_of(alphabet.begin(), alphabet.end(), [](const auto& t) { return !t.is_exchange(); });
  auto bad = [](const std::string& m) { throw Error(ErrorCode::InvalidProblem, m); };
  if (slot_count < 0 || exchange_slots < 0 || exchange_slots > slot_count) {
    bad("need 0 <= exchange_slots <= slot_count");
  }
  if (exchange_slots > 0 && !has_ex) bad("exchange slots but no exchange template");
  if (exchange_slots < slot_count && !has_field) bad("field slots but no field template");
  if (samples < 1) bad("need at least one sample");
  if (!(tolerance > 0.0)) bad("tolerance must be positive");
  if (merged_step_count && *merged_step_count > slot_count) bad("merged step count exceeds slots");
  for (std::size_t a = 0; a < alphabet.size(); ++a) {
    for (std::size_t b = a + 1; b < alphabet.size(); ++b) {
      if (alphabet[a] == alphabet[b]) bad("duplicate template " + alphabet[a].name());
    }
  }
}

// ---------------------------------------------------------------------------
// Search engine.

namespace {

using M4 = Eigen::Matrix<Complex, 4, 4>;
using M2 = Eigen::Matrix<Complex, 2, 2>;

template <class M>
double fixed_distance(const M& u, const M& t) {
  const Complex overlap = t.conjugate().cwiseProduct(u).sum();
  const double mag = std::abs(overlap);
  const Complex c = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
  return (u - c * t).norm() / std::sqrt(static_cast<double>(M::RowsAtCompileTime));
}

// phase_distance of a tensor product from the distances of its factors.
double combined_distance(double pair, double bystander) {
  const double d2 = pair * pair + bystander * bystander - 0.5 * pair * pair * bystander * bystander;
  return std::sqrt(std::max(0.0, d2));
}

CMatrix rotation2(Axis axis, double theta) { return spin_rotation(axis, theta); }

struct SampleTables {
  std::vector<M4> pair;       // per alphabet entry
  std::vector<M2> bystander;  // per alphabet entry (identity for exchange)
  M4 pair_target;
  M2 bystander_target;
};

SampleTables build_tables(const SynthesisProblem& p, const SymbolBinding& b) {
  // Three spins: pair (0, 1), bystander 2.
  SampleTables s;
  const RegisterSpec two(2);
  std::vector<double> scratch;
  for (const auto& t : p.alphabet) {
    if (t.is_exchange()) {
      s.pair.push_back(exchange_unitary(two, 0, 1, t.xi).matrix());
      s.bystander.push_back(M2::Identity());
    } else {
      const auto& a = b.angles(t.axis, t.symbol, scratch);
      s.pair.push_back(kron(rotation2(t.axis, a[0]), rotation2(t.axis, a[1])));
      s.bystander.push_back(rotation2(t.axis, a[2]));
    }
  }
  const auto& th = b.theta[axis_slot(Axis::Z)];
  switch (p.family) {
    case TargetFamily::FieldPair:
      s.pair_target = kron(rotation2(Axis::Z, th[0]), rotation2(Axis::Z, th[1]));
      s.bystander_target = rotation2(Axis::Z, th[2]);
      break;
    case TargetFamily::SwapConjugation:
      s.pair_target = kron(rotation2(Axis::Z, th[1]), rotation2(Axis::Z, th[0]));
      s.bystander_target = rotation2(Axis::Z, th[2]);
      break;
    case TargetFamily::RotationZ:
      s.pair_target = kron(rotation2(Axis::Z, 2.0 * (th[0] - th[1])), CMatrix::Identity(2, 2));
      s.bystander_target = M2::Identity();
      break;
    case TargetFamily::ControlledPhase:
      s.pair_target = M4::Zero();
      for (int r = 0; r < 4; ++r) {
        const double si = (r & 2) ? -0.5 : 0.5;
        const double sj = (r & 1) ? -0.5 : 0.5;
        s.pair_target(r, r) = std::exp(Complex(0, -kPi * si * sj));
      }
      s.bystander_target = M2::Identity();
      break;
  }
  return s;
}

// Runs task(k) for k in [0, n) on up to `workers` threads.
template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& task) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t k = 0; k < n; ++k) task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < n; k = next++) task(k);
    });
  }
  for (auto& t : pool) t.join();
}

struct Word {
  std::uint64_t ordinal;
  std::vector<int> letters;  // alphabet indices
  bool bystander_ok;
};

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int k = 0; k < exp; ++k) out = saturating_mul(out, base);
  return out;
}

std::vector<std::vector<int>> placements(const SynthesisProblem& p,
                                         const std::vector<int>& exchange_letters) {
  // Pattern per placement: -1 marks a field slot, otherwise the alphabet index.
  std::vector<std::vector<int>> out;
  const int s = p.slot_count;
  const int e = p.exchange_slots;
  std::vector<int> pos(static_cast<std::size_t>(e));
  for (int k = 0; k < e; ++k) pos[static_cast<std::size_t>(k)] = k;
  const std::uint64_t choices = saturating_pow(exchange_letters.size(), e);
  while (true) {
    for (std::uint64_t c = 0; c < choices; ++c) {
      std::vector<int> pattern(static_cast<std::size_t>(s), -1);
      std::uint64_t rest = c;
      for (int k = e - 1; k >= 0; --k) {
        pattern[static_cast<std::size_t>(pos[static_cast<std::size_t>(k)])] =
            exchange_letters[rest % exchange_letters.size()];
        rest /= exchange_letters.size();
      }
      out.push_back(std::move(pattern));
    }
    int k = e - 1;
    while (k >= 0 && pos[static_cast<std::size_t>(k)] == s - e + k) --k;
    if (k < 0) break;
    ++pos[static_cast<std::size_t>(k)];
    for (int m = k + 1; m < e; ++m) pos[static_cast<std::size_t>(m)] = pos[static_cast<std::size_t>(m - 1)] + 1;
  }
  return out;
}

}  // namespace

SynthesisResult enumerate(const SynthesisProblem& problem, unsigned workers) {
  problem.validate();
  const auto t0 = std::chrono::steady_clock::now();

  std::mt19937_64 rng(problem.seed);
  const RegisterSpec three(3);
  std::vector<SampleTables> tables;
  for (int s = 0; s < problem.samples; ++s) {
    tables.push_back(build_tables(problem, sample_binding(three, 0, 1, rng)));
  }

  std::vector<int> field_letters;
  std::vector<int> exchange_letters;
  for (std::size_t k = 0; k < problem.alphabet.size(); ++k) {
    (problem.alphabet[k].is_exchange() ? exchange_letters : field_letters).push_back(static_cast<int>(k));
  }
  const int word_len = problem.slot_count - problem.exchange_slots;
  const auto patterns = placements(problem, exchange_letters);
  const std::uint64_t n_place = patterns.size();
  const std::uint64_t n_words = saturating_pow(field_letters.size(), word_len);
  const std::uint64_t total = saturating_mul(n_words, n_place);
  const std::uint64_t limit = std::min(total, problem.budget);
  const double tol = problem.tolerance;

  SynthesisResult result;
  result.stats.candidates = limit;
  result.stats.budget_exhausted = total > problem.budget;

  // Phase 1: field words and their bystander products. Partitioned by the
  // first (up to two) letters; partition order is word-ordinal order.
  const std::size_t nf = field_letters.size();
  const int split = std::min(word_len, 2);
  const std::size_t n_parts = static_cast<std::size_t>(saturating_pow(nf, split));
  std::vector<std::vector<Word>> part_words(n_parts);
  std::vector<std::uint64_t> part_pruned(n_parts, 0);

  auto bystander_ok_all = [&](const std::vector<int>& letters, std::size_t from_sample) {
    for (std::size_t s = from_sample; s < tables.size(); ++s) {
      M2 w = M2::Identity();
      for (int l : letters) w = tables[s].bystander[static_cast<std::size_t>(l)] * w;
      if (fixed_distance(w, tables[s].bystander_target) > tol) return false;
    }
    return true;
  };

  parallel_for(n_parts, workers, [&](std::size_t part) {
    std::vector<int> digits(static_cast<std::size_t>(word_len), 0);
    std::size_t rest = part;
    for (int k = split - 1; k >= 0; --k) {
      digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % nf);
      rest /= nf;
    }
    const std::uint64_t per_part = saturating_pow(nf, word_len - split);
    std::uint64_t ordinal = saturating_mul(part, per_part);
    std::vector<M2> prefix(static_cast<std::size_t>(word_len) + 1, M2::Identity());
    std::vector<int> letters(static_cast<std::size_t>(word_len));
    int valid = 0;  // prefix[0..valid] are current
    const auto& t0tab = tables[0];
    for (std::uint64_t n = 0; n < per_part; ++n, ++ordinal) {
      if (saturating_mul(ordinal, n_place) >= limit) break;
      for (int k = valid; k < word_len; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        letters[uk] = field_letters[static_cast<std::size_t>(digits[uk])];
        prefix[uk + 1] = t0tab.bystander[static_cast<std::size_t>(letters[uk])] * prefix[uk];
      }
      const bool ok = fixed_distance(prefix[static_cast<std::size_t>(word_len)], t0tab.bystander_target) <= tol &&
                      bystander_ok_all(letters, 1);
      const std::uint64_t in_budget = std::min<std::uint64_t>(n_place, limit - ordinal * n_place);
      if (ok || !problem.prune) {
        part_words[part].push_back(Word{ordinal, letters, ok});
      } else {
        part_pruned[part] += in_budget;
      }
      // Advance the odometer over the free digits.
      int k = word_len - 1;
      while (k >= split && digits[static_cast<std::size_t>(k)] == static_cast<int>(nf) - 1) {
        digits[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < split) break;
      ++digits[static_cast<std::size_t>(k)];
      valid = k;
    }
  });

  std::vector<Word> words;
  for (std::size_t part = 0; part < n_parts; ++part) {
    result.stats.pruned += part_pruned[part];
    for (auto& w : part_words[part]) words.push_back(std::move(w));
  }

  // Phase 2: exchange placements for every surviving word.
  struct Found {
    std::vector<int> seq;
    double worst;
  };
  constexpr std::size_t kChunk = 64;
  const std::size_t n_chunks = (words.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<Found>> chunk_found(n_chunks);
  std::vector<std::uint64_t> chunk_filtered(n_chunks, 0);
  std::vector<std::uint64_t> chunk_evaluated(n_chunks, 0);
  const auto slots = static_cast<std::size_t>(problem.slot_count);

  parallel_for(n_chunks, workers, [&](std::size_t chunk) {
    std::vector<int> seq(slots, -1);
    std::vector<int> prev(slots, -2);
    std::vector<M4> prefix(slots + 1, M4::Identity());
    const auto& t0tab = tables[0];
    const std::size_t end = std::min(words.size(), (chunk + 1) * kChunk);
    for (std::size_t wi = chunk * kChunk; wi < end; ++wi) {
      const Word& w = words[wi];
      const std::uint64_t first = w.ordinal * n_place;
      for (std::uint64_t pi = 0; pi < n_place && first + pi < limit; ++pi) {
        const auto& pattern = patterns[pi];
        std::size_t f = 0;
        for (std::size_t k = 0; k < slots; ++k) {
          seq[k] = pattern[k] >= 0 ? pattern[k] : w.letters[f++];
        }
        if (problem.merged_step_count) {
          int fused = 0;
          for (std::size_t k = 1; k < slots; ++k) {
            const auto& a = problem.alphabet[static_cast<std::size_t>(seq[k - 1])];
            const auto& b = problem.alphabet[static_cast<std::size_t>(seq[k])];
            if (!a.is_exchange() && !b.is_exchange() && a.axis == b.axis) ++fused;
          }
          if (problem.slot_count - fused != *problem.merged_step_count) {
            ++chunk_filtered[chunk];
            continue;
          }
        }
        ++chunk_evaluated[chunk];
        std::size_t d = 0;
        while (d < slots && seq[d] == prev[d]) ++d;
        for (std::size_t k = d; k < slots; ++k) {
          prefix[k + 1] = t0tab.pair[static_cast<std::size_t>(seq[k])] * prefix[k];
        }
        prev = seq;
        const double d0 = fixed_distance(prefix[slots], t0tab.pair_target);
        if (d0 > tol) continue;
        if (!w.bystander_ok) continue;
        double worst = 0.0;
        bool pass = true;
        for (std::size_t s = 0; s < tables.size() && pass; ++s) {
          M4 u = M4::Identity();
          M2 by = M2::Identity();
          for (int l : seq) {
            u = tables[s].pair[static_cast<std::size_t>(l)] * u;
            by = tables[s].bystander[static_cast<std::size_t>(l)] * by;
          }
          const double dist = combined_distance(fixed_distance(u, tables[s].pair_target),
                                                fixed_distance(by, tables[s].bystander_target));
          worst = std::max(worst, dist);
          pass = dist <= tol;
        }
        if (pass) chunk_found[chunk].push_back(Found{seq, worst});
      }
    }
  });

  std::vector<Found> found;
  for (std::size_t c = 0; c < n_chunks; ++c) {
    result.stats.filtered += chunk_filtered[c];
    result.stats.evaluated += chunk_evaluated[c];
    for (auto& f : chunk_found[c]) found.push_back(std::move(f));
  }
  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.seq < b.seq; });
  result.stats.raw_solutions = found.size();

  std::vector<std::string> seen;
  for (const auto& f : found) {
    TemplateSequence seq;
    for (int l : f.seq) seq.push_back(problem.alphabet[static_cast<std::size_t>(l)]);
    std::string key = canonical_key(seq);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(std::move(key));
    result.sequences.push_back(std::move(seq));
    result.certificates.push_back(f.worst);
  }
  result.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

// ---------------------------------------------------------------------------
// Canonical form.

namespace {

struct Run {
  bool exchange = false;
  Axis axis = Axis::Z;
  // Field runs: net count per base symbol (theta, phi, dark).
  std::array<int, 3> net{0, 0, 0};
  // Exchange runs: total angle modulo 2 pi.
  double xi = 0.0;

  bool empty() const {
    if (exchange) return std::abs(xi) < 1e-12 || std::abs(xi - kTwoPi) < 1e-12;
    return net == std::array<int, 3>{0, 0, 0};
  }
};

int base_index(AngleSymbol s) {
  switch (s) {
    case AngleSymbol::Theta:
    case AngleSymbol::NegTheta: return 0;
    case AngleSymbol::Phi:
    case AngleSymbol::NegPhi: return 1;
    default: return 2;
  }
}

int sign_of(AngleSymbol s) {
  return (s == AngleSymbol::Theta || s == AngleSymbol::Phi || s == AngleSymbol::Dark) ? 1 : -1;
}

bool same_run(const Run& r, const PulseTemplate& t) {
  if (r.exchange != t.is_exchange()) return false;
  return r.exchange || r.axis == t.axis;
}

void add_to_run(Run& r, const PulseTemplate& t) {
  if (t.is_exchange()) {
    // exp(-i 2 pi S.S) is a scalar, so exchange angles only matter mod 2 pi.
    r.xi = std::fmod(r.xi + t.xi, kTwoPi);
    if (r.xi < 0) r.xi += kTwoPi;
  } else {
    r.net[static_cast<std::size_t>(base_index(t.symbol))] += sign_of(t.symbol);
  }
}

bool merge_runs(std::vector<Run>& runs) {
  bool changed = false;
  std::vector<Run> out;
  for (auto& r : runs) {
    if (r.empty()) {
      changed = true;
      continue;
    }
    if (!out.empty() && out.back().exchange == r.exchange &&
        (r.exchange || out.back().axis == r.axis)) {
      auto& b = out.back();
      if (r.exchange) {
        b.xi = std::fmod(b.xi + r.xi, kTwoPi);
      } else {
        for (std::size_t k = 0; k < 3; ++k) b.net[k] += r.net[k];
      }
      changed = true;
      continue;
    }
    out.push_back(r);
  }
  runs = std::move(out);
  return changed;
}

}  // namespace

std::string canonical_key(const TemplateSequence& seq) {
  std::vector<Run> runs;
  for (const auto& t : seq) {
    if (runs.empty() || !same_run(runs.back(), t)) {
      Run r;
      r.exchange = t.is_exchange();
      r.axis = t.axis;
      runs.push_back(r);
    }
    add_to_run(runs.back(), t);
  }
  while (merge_runs(runs)) {
  }
  std::string key;
  char buf[64];
  for (const auto& r : runs) {
    if (r.exchange) {
      std::snprintf(buf, sizeof buf, "E%.9f;", r.xi);
    } else {
      std::snprintf(buf, sizeof buf, "%c%+d%+d%+d;", axis_char(r.axis), r.net[0], r.net[1], r.net[2]);
    }
    key += buf;
  }
  return key;
}

ReverifyReport reverify(const SynthesisProblem& problem, const std::vector<TemplateSequence>& seqs,
                        int fresh_samples, std::uint64_t seed) {
  ReverifyReport rep;
  const RegisterSpec reg(4);
  for (const auto& seq : seqs) {
    std::mt19937_64 rng(seed);
    ReverifyEntry e;
    e.passed = true;
    for (int s = 0; s < fresh_samples; ++s) {
      const SymbolBinding b = sample_binding(reg, 1, 2, rng);
      const auto v =
          verify_target(instantiate(seq, b, reg), family_target(problem.family, b, reg), problem.tolerance);
      e.worst_distance = std::max(e.worst_distance, v.distance);
      e.worst_bystander = std::max(e.worst_bystander, v.bystander_residual);
      e.passed = e.passed && v.passed;
    }
    rep.all_passed = rep.all_passed && e.passed;
    rep.entries.push_back(e);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Presets.

TemplateSequence caption_alphabet() {
  using S = AngleSymbol;
  return {PulseTemplate::exchange(kPi),
          PulseTemplate::field(Axis::Z, S::Theta), PulseTemplate::field(Axis::Z, S::NegTheta),
          PulseTemplate::field(Axis::Z, S::Phi),   PulseTemplate::field(Axis::Z, S::NegPhi),
          PulseTemplate::field(Axis::Z, S::Dark),  PulseTemplate::field(Axis::Z, S::NegDark),
          PulseTemplate::field(Axis::X, S::Dark),  PulseTemplate::field(Axis::X, S::NegDark)};
}

SynthesisProblem fig1a_problem() {
  SynthesisProblem p;
  p.name = "fig1a";
  p.slot_count = 11;
  p.exchange_slots = 4;
  p.alphabet = caption_alphabet();
  p.family = TargetFamily::RotationZ;
  p.samples = 20;
  p.tolerance = tol::kComposite;
  return p;
}

SynthesisProblem fig1a_merged_problem() {
  using S = AngleSymbol;
  SynthesisProblem p = fig1a_problem();
  p.name = "fig1a_merged";
  p.slot_count = 12;
  p.merged_step_count = 11;
  p.alphabet = {PulseTemplate::exchange(kPi),
                PulseTemplate::field(Axis::Z, S::Theta), PulseTemplate::field(Axis::Z, S::NegTheta),
                PulseTemplate::field(Axis::Z, S::Phi),   PulseTemplate::field(Axis::Z, S::NegPhi),
                PulseTemplate::field(Axis::X, S::Dark),  PulseTemplate::field(Axis::X, S::NegDark)};
  return p;
}

SynthesisProblem planted_swap_problem() {
  SynthesisProblem p;
  p.name = "planted_swap";
  p.slot_count = 3;
  p.exchange_slots = 2;
  p.alphabet = {PulseTemplate::exchange(kPi), PulseTemplate::field(Axis::Z, AngleSymbol::Theta)};
  p.family = TargetFamily::SwapConjugation;
  return p;
}

SynthesisProblem planted_cp_problem() {
  SynthesisProblem p;
  p.name = "planted_cp";
  p.slot_count = 4;
  p.exchange_slots = 2;
  p.alphabet = {PulseTemplate::exchange(kPi / 2), PulseTemplate::field(Axis::Z, AngleSymbol::Dark),
                PulseTemplate::field(Axis::Z, AngleSymbol::NegDark)};
  p.family = TargetFamily::ControlledPhase;
  return p;
}

TemplateSequence rotation_z_template() {
  using S = AngleSymbol;
  const auto ex = PulseTemplate::exchange(kPi);
  const auto x = PulseTemplate::field(Axis::X, S::Dark);
  const auto xd = PulseTemplate::field(Axis::X, S::NegDark);
  return {ex, PulseTemplate::field(Axis::Z, S::NegTheta), ex,
          PulseTemplate::field(Axis::Z, S::Theta), PulseTemplate::field(Axis::Z, S::Phi),
          x, ex, xd, PulseTemplate::field(Axis::Z, S::NegPhi), x, ex, xd};
}

TemplateSequence rotation_x_template() {
  // Global conjugation taking S^z to S^x and S^x to -S^z.
  TemplateSequence out;
  for (const auto& t : rotation_z_template()) {
    if (t.is_exchange()) {
      out.push_back(t);
    } else if (t.axis == Axis::Z) {
      out.push_back(PulseTemplate::field(Axis::X, t.symbol));
    } else {
      out.push_back(PulseTemplate::field(Axis::Z, negate(t.symbol)));
    }
  }
  return out;
}

}  // namespace globalspin
