#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "landweber/operator.hpp"
#include "landweber/schedule.hpp"

namespace landweber {

/// Element-wise map applied to the iterate; receives the iteration index so
/// that temperature schedules can depend on it.
using ElementProjector = std::function<Complex(Complex value, int iteration)>;

enum class ProjectionOrder {
  /// s = x - omega T*(T x - y); x <- x + omega_k (proj(s) - x)
  project_then_inertial,
  /// x <- proj(x - omega_k omega T*(T x - y))
  inertial_then_project,
};

struct SolverConfig {
  LinearOperator op;
  CVector y;
  double omega = 1.0;
  InertialSchedule schedule = InertialSchedule::constant(1.0);
  ElementProjector projector{};  // empty: plain (inertial) Landweber
  ProjectionOrder projection_order = ProjectionOrder::project_then_inertial;
  int max_iter = 100;
  std::optional<CVector> reference{};  // ground truth for error norms
  std::optional<CVector> initial{};    // default: y for self-maps, zero otherwise
  int record_every = 0;              // 0: 1 for <= 1000 iterations, else 10
  /// Quadrature weight of the discretized inner product; norms are
  /// sqrt(measure) * Euclidean norm.
  double measure = 1.0;
  /// Called with (k, x_k) for every k = 0..max_iter before the update.
  std::function<void(int, const CVector&)> observer{};
};

struct HistoryEntry {
  int k = 0;
  double residual_norm = 0.0;  // ||T x - y||
  std::optional<double> error_norm;  // ||x - reference||
};

struct SolverRun {
  CVector x;
  std::vector<HistoryEntry> history;
  int iterations_done = 0;
};

/// An iterate became non-finite. Carries the history recorded so far.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, int iteration, std::vector<HistoryEntry> history)
      : std::runtime_error(what), iteration_(iteration), history_(std::move(history)) {}

  int iteration() const { return iteration_; }
  const std::vector<HistoryEntry>& history() const { return history_; }

 private:
  int iteration_;
  std::vector<HistoryEntry> history_;
};

/// x - omega T*(T x - y)
CVector landweber_step(const LinearOperator& op, const CVector& y, const CVector& x, double omega);

/// x - factor * omega * T*(T x - y)
CVector inertial_landweber_step(const LinearOperator& op, const CVector& y, const CVector& x, double omega,
                                double factor);

/// Runs max_iter inertial (optionally projected) Landweber updates. History is
/// recorded at k = 0, every record_every steps, and at the final k.
SolverRun run(const SolverConfig& config);

int default_record_every(int max_iter);

}  // namespace landweber
