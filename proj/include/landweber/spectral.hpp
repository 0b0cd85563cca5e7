#pragma once

#include <stdexcept>
#include <string_view>

#include "landweber/operator.hpp"

namespace landweber {

enum class BoundsSource { exact, power_iteration, marchenko_pastur, user_supplied };

std::string_view to_string(BoundsSource source);

/// Interval [l_min, l_max] enclosing the spectrum of B = omega * T*T.
/// Always satisfies 0 < l_min <= l_max.
class SpectralBounds {
 public:
  SpectralBounds(double l_min, double l_max, BoundsSource source = BoundsSource::user_supplied);

  double l_min() const { return l_min_; }
  double l_max() const { return l_max_; }
  BoundsSource source() const { return source_; }

  /// (l_max + l_min) / 2
  double center() const { return 0.5 * (l_max_ + l_min_); }
  /// (l_max - l_min) / 2
  double half_width() const { return 0.5 * (l_max_ - l_min_); }

  SpectralBounds scaled(double factor) const;

 private:
  double l_min_;
  double l_max_;
  BoundsSource source_;
};

struct PowerIterationOptions {
  double tol = 1e-10;
  int max_iter = 5000;
};

/// Power iteration did not settle. Carries the last iterate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, CVector last_iterate, double last_estimate)
      : std::runtime_error(what), last_iterate_(std::move(last_iterate)), last_estimate_(last_estimate) {}

  const CVector& last_iterate() const { return last_iterate_; }
  double last_estimate() const { return last_estimate_; }

 private:
  CVector last_iterate_;
  double last_estimate_;
};

/// Extreme eigenvalues of scale * T*T by power iteration. The largest comes
/// from iterating gram_apply directly, the smallest from iterating the
/// shifted map l_max*I - scale*T*T. Each phase stops once successive
/// Rayleigh quotients differ by less than tol (relative to the current
/// quotient); exceeding max_iter throws ConvergenceError.
///
/// The start vector is the normalized all-ones vector. A smallest estimate
/// at or below zero is floored to machine epsilon times l_max so the result
/// stays a valid SpectralBounds.
SpectralBounds extreme_eigenvalues(const LinearOperator& op, double scale, PowerIterationOptions options = {});

/// Marchenko-Pastur edges for H^H H where H has m rows, n columns and i.i.d.
/// CN(0, entry_variance) entries: variance * n * (1 +- sqrt(m/n))^2, with the
/// lower edge floored at floor_ratio * l_max.
SpectralBounds marchenko_pastur_bounds(int n, int m, double entry_variance, double floor_ratio = 0.01);

/// Ascending eigenvalues of H^H H from a dense Hermitian eigensolve.
Eigen::VectorXd gram_eigenvalues(const CMatrix& h);

/// Exact extreme eigenvalues of scale * H^H H.
SpectralBounds exact_gram_bounds(const CMatrix& h, double scale = 1.0);

inline constexpr Index kMaxDenseEigenDim = 512;

/// max_i |1 - omega * lambda_i| over the eigenvalues of H^H H, i.e. the
/// spectral radius of the Hermitian iteration matrix I - omega H^H H.
double iteration_spectral_radius(const CMatrix& h, double omega);

/// 2 / (l_min + l_max)
double omega_opt(const SpectralBounds& bounds);

}  // namespace landweber
