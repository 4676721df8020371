#include "globalspin/circuit.hpp"

#include <algorithm>

namespace globalspin {

PulseOp PulseOp::inverse() const {
  PulseOp out = *this;
  std::visit(
      [](auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, ExchangeOp>) {
          op.xi = -op.xi;
        } else if constexpr (std::is_same_v<T, XYExchangeOp>) {
          op.phi = -op.phi;
        } else {
          for (double& a : op.angles) a = -a;
        }
      },
      out.kind);
  return out;
}

void validate_op(const RegisterSpec& reg, const PulseOp& op) {
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, GlobalFieldOp>) {
          if (static_cast<int>(o.angles.size()) != reg.n_spins()) {
            throw Error(ErrorCode::LengthMismatch,
                        std::to_string(o.angles.size()) + " angles on a " +
                            std::to_string(reg.n_spins()) + "-spin register");
          }
        } else {
          reg.check_pair(o.i, o.j);
        }
      },
      op.kind);
}

Unitary op_unitary(const RegisterSpec& reg, const PulseOp& op) {
  return std::visit(
      [&](const auto& o) -> Unitary {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, ExchangeOp>) {
          return exchange_unitary(reg, o.i, o.j, o.xi);
        } else if constexpr (std::is_same_v<T, XYExchangeOp>) {
          return xy_exchange_unitary(reg, o.i, o.j, o.phi);
        } else {
          return global_field_unitary(reg, o.axis, o.angles);
        }
      },
      op.kind);
}

Circuit::Circuit(RegisterSpec reg, std::vector<PulseOp> ops) : reg_(reg) {
  for (auto& op : ops) append(std::move(op));
}

Circuit& Circuit::append(PulseOp op) {
  validate_op(reg_, op);
  ops_.push_back(std::move(op));
  return *this;
}

Circuit& Circuit::append(const Circuit& later) {
  if (!(later.reg_ == reg_)) {
    throw Error(ErrorCode::DimensionMismatch, "concatenating circuits on different registers");
  }
  ops_.insert(ops_.end(), later.ops_.begin(), later.ops_.end());
  return *this;
}

std::size_t Circuit::exchange_count() const {
  return static_cast<std::size_t>(
      std::count_if(ops_.begin(), ops_.end(), [](const PulseOp& op) { return op.is_exchange(); }));
}

std::size_t Circuit::field_count() const { return ops_.size() - exchange_count(); }

namespace {

std::pair<int, int> pair_of(const PulseOp& op) {
  if (const auto* e = std::get_if<ExchangeOp>(&op.kind)) return {e->i, e->j};
  const auto& x = std::get<XYExchangeOp>(op.kind);
  return {x.i, x.j};
}

}  // namespace

std::size_t Circuit::layer_count() const {
  std::size_t layers = 0;
  std::vector<int> busy;
  bool in_exchange_run = false;
  for (const auto& op : ops_) {
    if (!op.is_exchange()) {
      ++layers;
      in_exchange_run = false;
      busy.clear();
      continue;
    }
    const auto [i, j] = pair_of(op);
    const bool clash = std::find(busy.begin(), busy.end(), i) != busy.end() ||
                       std::find(busy.begin(), busy.end(), j) != busy.end();
    if (!in_exchange_run || clash) {
      ++layers;
      busy.clear();
    }
    busy.push_back(i);
    busy.push_back(j);
    in_exchange_run = true;
  }
  return layers;
}

Circuit Circuit::inverse() const {
  Circuit out(reg_);
  for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) out.ops_.push_back(it->inverse());
  return out;
}

Unitary evaluate(const Circuit& c) {
  Unitary u = Unitary::identity(c.reg().dim());
  for (const auto& op : c.ops()) u = op_unitary(c.reg(), op) * u;
  return u;
}

Circuit merge_adjacent_fields(const Circuit& c) {
  Circuit out(c.reg());
  std::vector<PulseOp> merged;
  for (const auto& op : c.ops()) {
    if (!merged.empty() && op.is_field() && merged.back().is_field()) {
      auto& prev = std::get<GlobalFieldOp>(merged.back().kind);
      const auto& cur = std::get<GlobalFieldOp>(op.kind);
      if (prev.axis == cur.axis) {
        for (std::size_t k = 0; k < prev.angles.size(); ++k) prev.angles[k] += cur.angles[k];
        if (op.duration_hint_s || merged.back().duration_hint_s) {
          merged.back().duration_hint_s =
              merged.back().duration_hint_s.value_or(0.0) + op.duration_hint_s.value_or(0.0);
        }
        continue;
      }
    }
    merged.push_back(op);
  }
  for (auto& op : merged) out.append(std::move(op));
  return out;
}

}  // namespace globalspin
