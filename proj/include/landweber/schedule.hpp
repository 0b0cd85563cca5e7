#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "landweber/spectral.hpp"

namespace landweber {

enum class ScheduleKind { constant, chebyshev };

/// Order in which the Chebyshev factors of one period are visited. The
/// end-of-period contraction does not depend on it; intra-period
/// transients do.
enum class FactorOrder { natural, reversed };

/// Periodic inertial factors: the factor used at global iteration k is
/// factors[k mod period].
class InertialSchedule {
 public:
  static InertialSchedule constant(double omega);
  static InertialSchedule chebyshev(const SpectralBounds& bounds, int period,
                                    FactorOrder order = FactorOrder::natural);

  double factor(std::int64_t k) const { return factors_[static_cast<std::size_t>(k % period())]; }
  std::span<const double> factors() const { return factors_; }
  int period() const { return static_cast<int>(factors_.size()); }
  ScheduleKind kind() const { return kind_; }
  const std::optional<SpectralBounds>& bounds() const { return bounds_; }

  /// Set for constant factors outside the SOR range (0, 2).
  const std::optional<std::string>& warning() const { return warning_; }

 private:
  InertialSchedule(std::vector<double> factors, ScheduleKind kind, std::optional<SpectralBounds> bounds);

  std::vector<double> factors_;
  ScheduleKind kind_;
  std::optional<SpectralBounds> bounds_;
  std::optional<std::string> warning_;
};

/// omega_k = 1 / (center + half_width * cos((2k + 1) pi / (2T))), k = 0..T-1.
/// The reciprocals are the roots of the degree-T Chebyshev polynomial mapped
/// onto [l_min, l_max].
inline InertialSchedule chebyshev_factors(const SpectralBounds& bounds, int period,
                                          FactorOrder order = FactorOrder::natural) {
  return InertialSchedule::chebyshev(bounds, period, order);
}

inline InertialSchedule constant_schedule(double omega) { return InertialSchedule::constant(omega); }

struct ConvergenceBound {
  double value = 0.0;
  /// l_min == l_max: a single eigenvalue is annihilated by one step and the
  /// bound is taken as 0 by continuity.
  bool degenerate = false;
};

/// U(T) = sech(T * acosh(center / half_width)).
ConvergenceBound convergence_bound(const SpectralBounds& bounds, int period);

/// beta(lambda) = prod_k (1 - omega_k * lambda).
double contraction_polynomial(std::span<const double> factors, double lambda);

struct ContractionResult {
  double value = 0.0;
  /// Some eigenvalue fell outside [l_min, l_max], so U(T) need not bound it.
  bool outside_bounds = false;
};

/// max over the supplied eigenvalues of |beta(lambda)| for one period of the
/// schedule. When the eigenvalues are the full spectrum of B this is the
/// spectral radius of prod_k (I - omega_k B).
ContractionResult empirical_contraction(const InertialSchedule& schedule, std::span<const double> eigenvalues);

}  // namespace landweber
