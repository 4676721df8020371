#include "globalspin/identities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace globalspin {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> pair_angles(const RegisterSpec& reg, int i, int j, double ai, double aj,
                                std::span<const double> bystander, double fill, double sign = 1.0) {
  if (!bystander.empty() && static_cast<int>(bystander.size()) != reg.n_spins()) {
    throw Error(ErrorCode::LengthMismatch, "bystander list must have one entry per spin");
  }
  std::vector<double> out(static_cast<std::size_t>(reg.n_spins()));
  for (int k = 0; k < reg.n_spins(); ++k) {
    out[static_cast<std::size_t>(k)] =
        bystander.empty() ? fill : sign * bystander[static_cast<std::size_t>(k)];
  }
  out[static_cast<std::size_t>(i)] = ai;
  out[static_cast<std::size_t>(j)] = aj;
  return out;
}

bool contains(std::span<const int> v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::Exact: return "exact";
    case Equivalence::UpToGlobalPhase: return "up_to_global_phase";
    case Equivalence::UpToLocalZ: return "up_to_local_z";
  }
  return "?";
}

double bystander_residual(const RegisterSpec& reg, const Unitary& u, std::span<const int> acted) {
  double worst = 0.0;
  for (int k = 0; k < reg.n_spins(); ++k) {
    if (contains(acted, k)) continue;
    for (Axis a : {Axis::Z, Axis::X}) {
      worst = std::max(worst, commutator_norm(u.matrix(), spin_operator(reg, k, a)));
    }
  }
  return worst;
}

VerificationReport verify_unitary(const Unitary& u, const GateTarget& t, double tolerance) {
  if (u.dim() != t.unitary.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(u.dim()) + " vs " + std::to_string(t.unitary.dim()));
  }
  int n = 0;
  while ((Index{1} << n) < u.dim()) ++n;
  const RegisterSpec reg(n);

  VerificationReport rep;
  rep.exact_deviation = max_abs(u.matrix() - t.unitary.matrix());
  rep.global_factor = relative_phase(u, t.unitary);

  if (t.equivalence == Equivalence::UpToLocalZ) {
    // With M = U T^dagger ~ c exp(-i sum_a alpha_a S_a^z), the diagonal ratio
    // across a flip of spin a is e^{-i alpha_a}.
    const CMatrix m = u.matrix() * t.unitary.matrix().adjoint();
    Eigen::VectorXd phase = Eigen::VectorXd::Zero(u.dim());
    for (int a : t.acted_spins) {
      const Index b = reg.bit(a);
      Complex acc{0.0, 0.0};
      for (Index r = 0; r < u.dim(); ++r) {
        if (r & b) continue;
        acc += m(r, r) * std::conj(m(r | b, r | b));
      }
      const double alpha = -std::arg(acc);
      rep.local_z_angles.push_back(alpha);
      for (Index r = 0; r < u.dim(); ++r) phase(r) -= alpha * ((r & b) ? -0.5 : 0.5);
    }
    CMatrix d = CMatrix::Zero(u.dim(), u.dim());
    for (Index r = 0; r < u.dim(); ++r) d(r, r) = std::exp(Complex(0, phase(r)));
    const Unitary corrected = Unitary::trusted(d) * t.unitary;
    rep.distance = phase_distance(u, corrected);
    rep.global_factor = relative_phase(u, corrected);
  } else {
    rep.distance = phase_distance(u, t.unitary);
  }

  rep.bystander_residual = bystander_residual(reg, u, t.acted_spins);
  rep.bystander_ok = rep.bystander_residual <= tolerance;
  rep.distance_ok = t.equivalence == Equivalence::Exact ? rep.exact_deviation <= tolerance
                                                        : rep.distance <= tolerance;
  rep.passed = rep.distance_ok && rep.bystander_ok;
  return rep;
}

VerificationReport verify_target(const Circuit& c, const GateTarget& t, double tolerance) {
  return verify_unitary(evaluate(c), t, tolerance);
}

Construction swap_conjugation(const RegisterSpec& reg, int i, int j, double theta_i,
                              double theta_j, std::span<const double> bystander) {
  reg.check_pair(i, j);
  const auto angles = pair_angles(reg, i, j, theta_i, theta_j, bystander, 0.0);
  Circuit c(reg);
  c.append(PulseOp::exchange(i, j, -kPi));
  c.append(PulseOp::field(Axis::Z, angles));
  c.append(PulseOp::exchange(i, j, kPi));

  auto swapped = angles;
  std::swap(swapped[static_cast<std::size_t>(i)], swapped[static_cast<std::size_t>(j)]);
  Unitary target = global_field_unitary(reg, Axis::Z, swapped);
  if (reg.n_spins() > 2) {
    auto undo = angles;
    for (double& a : undo) a = -a;
    c.append(PulseOp::field(Axis::Z, undo));
    target = global_field_unitary(reg, Axis::Z, undo) * target;
  }
  return {std::move(c), GateTarget{std::move(target), {i, j}, Equivalence::Exact}};
}

Circuit tilde_swap(const RegisterSpec& reg, int i, int j, double theta,
                   std::span<const double> bystander) {
  reg.check_pair(i, j);
  auto dark = pair_angles(reg, i, j, theta, theta + kPi, bystander, theta);
  Circuit c(reg);
  c.append(PulseOp::field(Axis::X, dark));
  c.append(PulseOp::exchange(i, j, kPi));
  for (double& a : dark) a = -a;
  c.append(PulseOp::field(Axis::X, std::move(dark)));
  return c;
}

ScalarFactor tilde_swap_factor(const RegisterSpec& reg, int i, int j, double theta, double theta_i,
                               double theta_j) {
  const Unitary w = evaluate(tilde_swap(reg, i, j, theta));
  const auto before = pair_angles(reg, i, j, theta_i, theta_j, {}, 0.0);
  // e^{+i(a S_j^z + b S_i^z)} is the z pulse with angles (-b, -a) on (i, j).
  const auto after = pair_angles(reg, i, j, -theta_j, -theta_i, {}, 0.0);
  const Unitary lhs = w * global_field_unitary(reg, Axis::Z, before) * w;
  const Unitary rhs = global_field_unitary(reg, Axis::Z, after);
  const CMatrix m = lhs.matrix() * rhs.matrix().adjoint();
  ScalarFactor out;
  out.factor = m.trace() / static_cast<double>(m.rows());
  out.deviation = max_abs(m - out.factor * CMatrix::Identity(m.rows(), m.cols()));
  return out;
}

Construction cp_circuit(const RegisterSpec& reg, int i, int j, double theta,
                        std::span<const double> bystander) {
  reg.check_pair(i, j);
  auto dark = pair_angles(reg, i, j, theta, theta + kPi, bystander, theta);
  auto undo = dark;
  for (double& a : undo) a = -a;
  Circuit c(reg);
  c.append(PulseOp::field(Axis::Z, std::move(dark)));
  c.append(PulseOp::exchange(i, j, kPi / 2));
  c.append(PulseOp::field(Axis::Z, std::move(undo)));
  c.append(PulseOp::exchange(i, j, kPi / 2));

  CMatrix zz = CMatrix::Zero(reg.dim(), reg.dim());
  for (Index r = 0; r < reg.dim(); ++r) {
    const double si = (r & reg.bit(i)) ? -0.5 : 0.5;
    const double sj = (r & reg.bit(j)) ? -0.5 : 0.5;
    zz(r, r) = std::exp(Complex(0, -kPi * si * sj));
  }
  return {std::move(c), GateTarget{Unitary::trusted(zz), {i, j}, Equivalence::Exact}};
}

GateTarget controlled_phase_target(const RegisterSpec& reg, int i, int j) {
  CMatrix cp = CMatrix::Identity(4, 4);
  cp(3, 3) = -1.0;
  return {embed_two_spin(reg, i, j, cp), {i, j}, Equivalence::UpToLocalZ};
}

Construction xy_single_spin_circuit(const RegisterSpec& reg, int i, int j, double theta_i,
                                   double theta_j, std::span<const double> bystander) {
  reg.check_pair(i, j);
  // e^{i pi S_i^z} is a z pulse of angle -pi on spin i and none elsewhere.
  Circuit c(reg);
  c.append(PulseOp::field(Axis::Z, pair_angles(reg, i, j, -kPi, 0.0, {}, 0.0)));
  auto x = pair_angles(reg, i, j, theta_i, theta_j, bystander, 0.0);
  c.append(PulseOp::field(Axis::X, x));
  c.append(PulseOp::field(Axis::Z, pair_angles(reg, i, j, -kPi, 0.0, {}, 0.0)));
  for (double& a : x) a = -a;
  c.append(PulseOp::field(Axis::X, std::move(x)));
  GateTarget t{embed_one_spin(reg, i, spin_rotation(Axis::X, -2.0 * theta_i)), {i},
               Equivalence::UpToGlobalPhase};
  return {std::move(c), std::move(t)};
}

Complex xy_single_spin_literal_factor(double theta_i, double theta_j) {
  const RegisterSpec reg(2);
  const auto built = xy_single_spin_circuit(reg, 0, 1, theta_i, theta_j);
  const Unitary u = evaluate(built.circuit);
  const CMatrix m = u.matrix() * built.target.unitary.matrix().adjoint();
  return m.trace() / static_cast<double>(m.rows());
}

namespace {

Circuit xy_cp_pulses(const RegisterSpec& reg, int i, int j, double tJ, OuterRotation outer,
                     std::span<const double> bystander) {
  const double y = outer == OuterRotation::Pauli ? kPi / 2 : kPi / 4;
  Circuit c(reg);
  c.append(PulseOp::field(Axis::Y, pair_angles(reg, i, j, y, -y, bystander, 0.0)));
  c.append(PulseOp::field(Axis::X, pair_angles(reg, i, j, -kPi, 0.0, bystander, 0.0)));
  c.append(PulseOp::xy(i, j, tJ));
  c.append(PulseOp::field(Axis::X, pair_angles(reg, i, j, -kPi, 0.0, bystander, 0.0, -1.0)));
  c.append(PulseOp::xy(i, j, tJ));
  c.append(PulseOp::field(Axis::Y, pair_angles(reg, i, j, -y, y, bystander, 0.0, -1.0)));
  return c;
}

Unitary zz_rotation(const RegisterSpec& reg, int i, int j, double angle) {
  CMatrix zz = CMatrix::Zero(reg.dim(), reg.dim());
  for (Index r = 0; r < reg.dim(); ++r) {
    const double si = (r & reg.bit(i)) ? -0.5 : 0.5;
    const double sj = (r & reg.bit(j)) ? -0.5 : 0.5;
    zz(r, r) = std::exp(Complex(0, -angle * si * sj));
  }
  return Unitary::trusted(zz);
}

}  // namespace

double xy_cp_zz_normalization(OuterRotation outer) {
  constexpr double kReference = 0.3;
  const RegisterSpec reg(2);
  const Unitary u = evaluate(xy_cp_pulses(reg, 0, 1, kReference, outer, {}));
  // exp(-i c tJ S^z S^z): the |01> entry over the |00> entry is e^{i c tJ / 2}.
  const double c = 2.0 * std::arg(u.matrix()(1, 1) / u.matrix()(0, 0)) / kReference;
  for (double candidate : {-8.0, -2.0, -0.5, 0.5, 2.0, 8.0}) {
    if (std::abs(c - candidate) < 1e-9) return candidate;
  }
  return c;
}

Construction xy_cp_circuit(const RegisterSpec& reg, int i, int j, double tJ, OuterRotation outer,
                           std::span<const double> bystander) {
  reg.check_pair(i, j);
  Circuit c = xy_cp_pulses(reg, i, j, tJ, outer, bystander);
  const double norm = xy_cp_zz_normalization(outer);
  return {std::move(c),
          GateTarget{zz_rotation(reg, i, j, norm * tJ), {i, j}, Equivalence::UpToGlobalPhase}};
}

double xy_cp_spin_reading_residual(double tJ) {
  const RegisterSpec reg(2);
  const Unitary u = evaluate(xy_cp_pulses(reg, 0, 1, tJ, OuterRotation::Spin, {}));
  auto dist = [&](double c) { return phase_distance(u, zz_rotation(reg, 0, 1, c * tJ)); };
  // The distance is periodic in c with period 8 pi / tJ; scan one period then refine.
  const double period = 8.0 * kPi / std::max(std::abs(tJ), 1e-9);
  double best_c = 0.0;
  double best = dist(0.0);
  constexpr int kGrid = 4000;
  for (int s = 1; s < kGrid; ++s) {
    const double c = -0.5 * period + period * s / kGrid;
    if (const double d = dist(c); d < best) {
      best = d;
      best_c = c;
    }
  }
  double lo = best_c - period / kGrid;
  double hi = best_c + period / kGrid;
  for (int it = 0; it < 100; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (dist(m1) < dist(m2)) hi = m2; else lo = m1;
  }
  return std::min(best, dist(0.5 * (lo + hi)));
}

namespace {

void check_disjoint(const RegisterSpec& reg, std::span<const std::pair<int, int>> pairs) {
  std::vector<int> used;
  for (const auto& [a, b] : pairs) {
    reg.check_pair(a, b);
    for (int s : {a, b}) {
      if (contains(used, s)) {
        throw Error(ErrorCode::OverlappingPairs, "spin " + std::to_string(s) + " is in two pairs");
      }
      used.push_back(s);
    }
  }
}

}  // namespace

Circuit parallel_apply(const Circuit& pair_template, std::span<const std::pair<int, int>> pairs,
                       const RegisterSpec& reg) {
  if (pair_template.reg().n_spins() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "parallel_apply needs a two-spin template");
  }
  check_disjoint(reg, pairs);
  Circuit out(reg);
  for (const auto& op : pair_template.ops()) {
    if (const auto* f = std::get_if<GlobalFieldOp>(&op.kind)) {
      std::vector<double> angles(static_cast<std::size_t>(reg.n_spins()), f->angles[0]);
      for (const auto& [a, b] : pairs) {
        angles[static_cast<std::size_t>(a)] = f->angles[0];
        angles[static_cast<std::size_t>(b)] = f->angles[1];
      }
      PulseOp g = PulseOp::field(f->axis, std::move(angles));
      g.duration_hint_s = op.duration_hint_s;
      out.append(std::move(g));
      continue;
    }
    for (const auto& [a, b] : pairs) {
      PulseOp e = op;
      if (auto* ex = std::get_if<ExchangeOp>(&e.kind)) {
        ex->i = a;
        ex->j = b;
      } else {
        auto& xy = std::get<XYExchangeOp>(e.kind);
        xy.i = a;
        xy.j = b;
      }
      out.append(std::move(e));
    }
  }
  return out;
}

Unitary parallel_target(const Unitary& pair_gate, std::span<const std::pair<int, int>> pairs,
                        const RegisterSpec& reg) {
  check_disjoint(reg, pairs);
  Unitary u = Unitary::identity(reg.dim());
  for (const auto& [a, b] : pairs) u = embed_two_spin(reg, a, b, pair_gate.matrix()) * u;
  return u;
}

}  // namespace globalspin
