#include "landweber/solver.hpp"

#include <cmath>

namespace landweber {

namespace {

void check_dims(const LinearOperator& op, const CVector& y, const CVector& x) {
  if (y.size() != op.out_dim()) {
    throw DimensionError("observation has dimension " + std::to_string(y.size()) + ", operator output is " +
                         std::to_string(op.out_dim()));
  }
  if (x.size() != op.in_dim()) {
    throw DimensionError("iterate has dimension " + std::to_string(x.size()) + ", operator input is " +
                         std::to_string(op.in_dim()));
  }
}

}  // namespace

CVector landweber_step(const LinearOperator& op, const CVector& y, const CVector& x, double omega) {
  check_dims(op, y, x);
  CVector residual = op.apply(x) - y;
  return x - omega * op.adjoint_apply(residual);
}

CVector inertial_landweber_step(const LinearOperator& op, const CVector& y, const CVector& x, double omega,
                                double factor) {
  return landweber_step(op, y, x, factor * omega);
}

int default_record_every(int max_iter) { return max_iter <= 1000 ? 1 : 10; }

SolverRun run(const SolverConfig& config) {
  const LinearOperator& op = config.op;
  const CVector& y = config.y;
  if (config.max_iter < 0) throw std::invalid_argument("max_iter must be non-negative");
  if (config.reference && config.reference->size() != op.in_dim()) {
    throw DimensionError("reference has dimension " + std::to_string(config.reference->size()) +
                         ", operator input is " + std::to_string(op.in_dim()));
  }
  if (!(config.measure > 0.0)) throw std::invalid_argument("measure must be positive");

  CVector x;
  if (config.initial) {
    x = *config.initial;
  } else if (op.in_dim() == op.out_dim()) {
    x = y;
  } else {
    x = CVector::Zero(op.in_dim());
  }
  check_dims(op, y, x);

  const int every = config.record_every > 0 ? config.record_every : default_record_every(config.max_iter);
  const double root_measure = std::sqrt(config.measure);

  SolverRun out;
  auto record = [&](int k, const CVector& residual) {
    HistoryEntry e;
    e.k = k;
    e.residual_norm = root_measure * residual.norm();
    if (config.reference) e.error_norm = root_measure * (x - *config.reference).norm();
    out.history.push_back(e);
  };

  for (int k = 0; k < config.max_iter; ++k) {
    if (config.observer) config.observer(k, x);
    CVector residual = op.apply(x) - y;
    if (!std::isfinite(residual.norm())) {
      throw DivergenceError("residual became non-finite at iteration " + std::to_string(k), k,
                            std::move(out.history));
    }
    if (k % every == 0) record(k, residual);
    const CVector gradient = op.adjoint_apply(residual);
    const double factor = config.schedule.factor(k);

    if (!config.projector) {
      x -= (factor * config.omega) * gradient;
    } else if (config.projection_order == ProjectionOrder::project_then_inertial) {
      CVector s = x - config.omega * gradient;
      for (Index i = 0; i < s.size(); ++i) s[i] = config.projector(s[i], k);
      x += factor * (s - x);
    } else {
      x -= (factor * config.omega) * gradient;
      for (Index i = 0; i < x.size(); ++i) x[i] = config.projector(x[i], k);
    }

    if (!x.allFinite()) {
      throw DivergenceError("iterate became non-finite at iteration " + std::to_string(k + 1), k + 1,
                            std::move(out.history));
    }
    out.iterations_done = k + 1;
  }
  if (config.observer) config.observer(config.max_iter, x);
  record(config.max_iter, CVector(op.apply(x) - y));
  out.x = std::move(x);
  return out;
}

}  // namespace landweber
