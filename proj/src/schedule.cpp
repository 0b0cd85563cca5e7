#include "landweber/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace landweber {

InertialSchedule::InertialSchedule(std::vector<double> factors, ScheduleKind kind,
                                   std::optional<SpectralBounds> bounds)
    : factors_(std::move(factors)), kind_(kind), bounds_(std::move(bounds)) {}

InertialSchedule InertialSchedule::constant(double omega) {
  if (!std::isfinite(omega)) throw std::invalid_argument("inertial factor must be finite");
  InertialSchedule s({omega}, ScheduleKind::constant, std::nullopt);
  if (!(omega > 0.0 && omega < 2.0)) {
    std::ostringstream msg;
    msg << "constant inertial factor " << omega << " lies outside the SOR range (0, 2)";
    s.warning_ = msg.str();
  }
  return s;
}

InertialSchedule InertialSchedule::chebyshev(const SpectralBounds& bounds, int period, FactorOrder order) {
  if (period < 1) throw std::invalid_argument("period must be at least 1");
  std::vector<double> factors(static_cast<std::size_t>(period));
  const double t2 = 2.0 * period;
  for (int k = 0; k < period; ++k) {
    const double angle = (2.0 * k + 1.0) * std::numbers::pi / t2;
    factors[static_cast<std::size_t>(k)] = 1.0 / (bounds.center() + bounds.half_width() * std::cos(angle));
  }
  // T = 1: cos(pi/2) is not exactly zero in floating point; pin the factor to
  // 2 / (l_min + l_max) so it coincides with omega_opt.
  if (period == 1) factors[0] = omega_opt(bounds);
  if (order == FactorOrder::reversed) std::reverse(factors.begin(), factors.end());
  return InertialSchedule(std::move(factors), ScheduleKind::chebyshev, bounds);
}

ConvergenceBound convergence_bound(const SpectralBounds& bounds, int period) {
  if (period < 1) throw std::invalid_argument("period must be at least 1");
  const double width = bounds.l_max() - bounds.l_min();
  if (width <= 0.0) return {0.0, true};
  // acosh(1 + eps) with eps = 2 l_min / (l_max - l_min), in a form that
  // stays accurate when l_min << l_max.
  const double eps = 2.0 * bounds.l_min() / width;
  const double a = std::log1p(eps + std::sqrt(eps * (eps + 2.0)));
  return {1.0 / std::cosh(period * a), false};
}

double contraction_polynomial(std::span<const double> factors, double lambda) {
  double p = 1.0;
  for (double w : factors) p *= 1.0 - w * lambda;
  return p;
}

ContractionResult empirical_contraction(const InertialSchedule& schedule, std::span<const double> eigenvalues) {
  ContractionResult result;
  const auto& bounds = schedule.bounds();
  for (double lambda : eigenvalues) {
    result.value = std::max(result.value, std::abs(contraction_polynomial(schedule.factors(), lambda)));
    if (bounds && (lambda < bounds->l_min() || lambda > bounds->l_max())) result.outside_bounds = true;
  }
  return result;
}

}  // namespace landweber
