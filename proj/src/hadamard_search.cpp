#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "globalspin/synthesis.hpp"

namespace globalspin {

namespace {

constexpr double kPi = std::numbers::pi;
using M4 = Eigen::Matrix<Complex, 4, 4>;

M4 pair_product(const std::string& word, const double* params, const HadamardAssumptions& a) {
  const RegisterSpec two(2);
  M4 u = M4::Identity();
  for (std::size_t k = 0; k < word.size(); ++k) {
    const double p = params[k];
    M4 step;
    if (word[k] == 'E') {
      step = exchange_unitary(two, 0, 1, p).matrix();
    } else {
      const Axis axis = word[k] == 'Z' ? Axis::Z : Axis::X;
      const double rho = word[k] == 'Z' ? a.rho_z : a.rho_x;
      step = kron(spin_rotation(axis, p), spin_rotation(axis, rho * p));
    }
    u = step * u;
  }
  return u;
}

struct Residual {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const std::string* word;
  const HadamardAssumptions* a;
  M4 target;

  int inputs() const { return static_cast<int>(word->size()) + 1; }
  int values() const { return 32; }

  // Unknowns: one angle per letter, then the global phase.
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const M4 u = pair_product(*word, x.data(), *a);
    const Complex phase = std::exp(Complex(0.0, x(static_cast<Eigen::Index>(word->size()))));
    const M4 diff = u - phase * target;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        f(2 * (4 * r + c)) = diff(r, c).real();
        f(2 * (4 * r + c) + 1) = diff(r, c).imag();
      }
    }
    return 0;
  }
};

std::vector<std::string> structure_words(int max_depth) {
  std::vector<std::string> out{""};
  std::vector<std::string> layer{""};
  for (int depth = 1; depth <= max_depth; ++depth) {
    std::vector<std::string> next;
    for (const auto& w : layer) {
      for (char c : {'E', 'Z', 'X'}) {
        if (!w.empty() && w.back() == c) continue;
        next.push_back(w + c);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace

Circuit hadamard_structure_circuit(const std::string& word, const std::vector<double>& params,
                                   const HadamardAssumptions& a) {
  if (params.size() < word.size()) {
    throw Error(ErrorCode::LengthMismatch, "one parameter per structure letter");
  }
  Circuit c{RegisterSpec(2)};
  for (std::size_t k = 0; k < word.size(); ++k) {
    const double p = params[k];
    switch (word[k]) {
      case 'E': c.append(PulseOp::exchange(0, 1, p)); break;
      case 'Z': c.append(PulseOp::field(Axis::Z, {p, a.rho_z * p})); break;
      case 'X': c.append(PulseOp::field(Axis::X, {p, a.rho_x * p})); break;
      default: throw Error(ErrorCode::ParseError, std::string("bad structure letter '") + word[k] + "'");
    }
  }
  return c;
}

Unitary hadamard_pair_target() {
  CMatrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  return Unitary::from_matrix(kron(h, h));
}

HadamardResult hadamard8_search(const HadamardAssumptions& a, const Unitary& target) {
  if (target.dim() != 4) throw Error(ErrorCode::DimensionMismatch, "target must be 4x4");
  const auto t0 = std::chrono::steady_clock::now();
  HadamardResult res;
  const auto words = structure_words(a.max_depth);
  const M4 t = target.matrix();

  for (std::size_t w = 0; w < words.size(); ++w) {
    if (w >= a.budget) {
      res.budget_exhausted = true;
      break;
    }
    const std::string& word = words[w];
    StructureFit fit;
    fit.word = word;
    fit.distance = std::numeric_limits<double>::infinity();
    std::seed_seq seq{a.seed, static_cast<std::uint64_t>(w)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> exch(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> field(-2.0 * kPi, 2.0 * kPi);
    const int starts = word.empty() ? 1 : a.starts;
    for (int s = 0; s < starts; ++s) {
      Eigen::VectorXd x(static_cast<Eigen::Index>(word.size()) + 1);
      for (std::size_t k = 0; k < word.size(); ++k) {
        x(static_cast<Eigen::Index>(k)) = word[k] == 'E' ? exch(rng) : field(rng);
      }
      {
        const M4 u = pair_product(word, x.data(), a);
        const Complex overlap = t.conjugate().cwiseProduct(u).sum();
        x(static_cast<Eigen::Index>(word.size())) = std::arg(overlap);
      }
      if (!word.empty()) {
        Residual r{&word, &a, t};
        Eigen::NumericalDiff<Residual> diff(r);
        Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Residual>> lm(diff);
        lm.parameters.maxfev = 2000;
        lm.parameters.xtol = 1e-14;
        lm.parameters.ftol = 1e-14;
        lm.minimize(x);
      }
      std::vector<double> params(x.data(), x.data() + word.size());
      const double d = phase_distance(evaluate(hadamard_structure_circuit(word, params, a)), target);
      if (d < fit.distance) {
        fit.distance = d;
        fit.params = std::move(params);
      }
      if (fit.distance <= a.success_distance * 1e-3) break;
    }
    res.fits.push_back(std::move(fit));
  }
  for (std::size_t k = 0; k < res.fits.size(); ++k) {
    if (res.fits[k].distance < res.fits[res.best].distance) res.best = k;
  }
  res.success = !res.fits.empty() && res.fits[res.best].distance <= a.success_distance;
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace globalspin
