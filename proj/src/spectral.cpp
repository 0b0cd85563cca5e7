#include "landweber/spectral.hpp"

#include <cmath>
#include <limits>

namespace landweber {

std::string_view to_string(BoundsSource source) {
  switch (source) {
    case BoundsSource::exact:
      return "exact";
    case BoundsSource::power_iteration:
      return "power-iteration";
    case BoundsSource::marchenko_pastur:
      return "marchenko-pastur";
    case BoundsSource::user_supplied:
      return "user-supplied";
  }
  return "unknown";
}

SpectralBounds::SpectralBounds(double l_min, double l_max, BoundsSource source)
    : l_min_(l_min), l_max_(l_max), source_(source) {
  if (!std::isfinite(l_min) || !std::isfinite(l_max) || !(l_min > 0.0) || !(l_min <= l_max)) {
    throw std::invalid_argument("spectral bounds must satisfy 0 < l_min <= l_max (got l_min=" +
                                std::to_string(l_min) + ", l_max=" + std::to_string(l_max) + ")");
  }
}

SpectralBounds SpectralBounds::scaled(double factor) const {
  return SpectralBounds(l_min_ * factor, l_max_ * factor, source_);
}

namespace {

struct PowerResult {
  double value = 0.0;
  int iterations = 0;
};

// Dominant eigenvalue of a Hermitian positive semidefinite map.
template <typename Map>
PowerResult power_iterate(const Map& map, Index dim, const PowerIterationOptions& options, const char* phase) {
  CVector v = CVector::Ones(dim) / std::sqrt(static_cast<double>(dim));
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= options.max_iter; ++it) {
    CVector w = map(v);
    const double rayleigh = inner(w, v).real();
    const double norm = w.norm();
    if (norm == 0.0) return {0.0, it};
    if (std::isfinite(previous) && std::abs(rayleigh - previous) <= options.tol * std::abs(rayleigh)) {
      return {rayleigh, it};
    }
    previous = rayleigh;
    v = w / norm;
  }
  throw ConvergenceError(std::string("power iteration (") + phase + ") did not converge within " +
                             std::to_string(options.max_iter) + " iterations",
                         v, previous);
}

}  // namespace

SpectralBounds extreme_eigenvalues(const LinearOperator& op, double scale, PowerIterationOptions options) {
  if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
  if (!(options.tol > 0.0) || options.max_iter < 1) throw std::invalid_argument("invalid power iteration options");
  const Index dim = op.in_dim();

  const auto top = power_iterate([&](const CVector& v) { CVector g = op.gram_apply(v); return CVector(scale * g); },
                                 dim, options, "largest");
  const double l_max = top.value;
  if (!(l_max > 0.0)) throw std::domain_error("operator has a zero Gram spectrum");

  const auto shifted = power_iterate(
      [&](const CVector& v) { CVector g = op.gram_apply(v); return CVector(l_max * v - scale * g); }, dim,
      options, "smallest");
  double l_min = l_max - shifted.value;
  const double floor = std::numeric_limits<double>::epsilon() * l_max;
  if (l_min < floor) l_min = floor;
  if (l_min > l_max) l_min = l_max;
  return SpectralBounds(l_min, l_max, BoundsSource::power_iteration);
}

SpectralBounds marchenko_pastur_bounds(int n, int m, double entry_variance, double floor_ratio) {
  if (n < 1 || m < 1) throw std::invalid_argument("matrix dimensions must be positive");
  if (!(entry_variance > 0.0)) throw std::invalid_argument("entry variance must be positive");
  if (!(floor_ratio > 0.0 && floor_ratio < 1.0)) throw std::invalid_argument("floor ratio must lie in (0, 1)");
  const double ratio = std::sqrt(static_cast<double>(m) / static_cast<double>(n));
  const double scale = entry_variance * static_cast<double>(n);
  const double l_max = scale * (1.0 + ratio) * (1.0 + ratio);
  const double edge = scale * (1.0 - ratio) * (1.0 - ratio);
  return SpectralBounds(std::max(edge, floor_ratio * l_max), l_max, BoundsSource::marchenko_pastur);
}

Eigen::VectorXd gram_eigenvalues(const CMatrix& h) {
  if (h.cols() > kMaxDenseEigenDim) {
    throw std::invalid_argument("dense eigensolve limited to " + std::to_string(kMaxDenseEigenDim) + " columns");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.adjoint() * h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolve failed");
  return solver.eigenvalues();
}

SpectralBounds exact_gram_bounds(const CMatrix& h, double scale) {
  const Eigen::VectorXd eig = gram_eigenvalues(h);
  return SpectralBounds(scale * eig.minCoeff(), scale * eig.maxCoeff(), BoundsSource::exact);
}

double iteration_spectral_radius(const CMatrix& h, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  const Eigen::VectorXd eig = gram_eigenvalues(h);
  return (1.0 - omega * eig.array()).abs().maxCoeff();
}

double omega_opt(const SpectralBounds& bounds) { return 2.0 / (bounds.l_min() + bounds.l_max()); }

}  // namespace landweber
