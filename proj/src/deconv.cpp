#include "landweber/deconv.hpp"

#include <bit>
#include <cmath>

#include "landweber/schedule.hpp"
#include "landweber/solver.hpp"

namespace landweber::deconv {

void GridSpec::validate() const {
  if (bins < 2 || !std::has_single_bit(static_cast<unsigned>(bins))) {
    throw std::invalid_argument("grid bins must be a power of two >= 2, got " + std::to_string(bins));
  }
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("grid requires finite lo < hi");
  }
}

double source_signal(double x) {
  auto bump = [](double u) { return std::exp(-u * u); };
  return 0.5 * bump(x) + bump(x - 2.0) - bump(x - 3.0) + 0.5 * bump(x - 4.0);
}

double blur_kernel(double x) { return std::exp(-x * x); }

Signals synthesize_signals(const GridSpec& grid) {
  grid.validate();
  Signals s{CVector(grid.bins), CVector(grid.bins)};
  for (int i = 0; i < grid.bins; ++i) {
    const double x = grid.point(i);
    s.f[i] = source_signal(x);
    s.g[i] = blur_kernel(x);
  }
  return s;
}

CVector kernel_samples(const GridSpec& grid, const std::function<double(double)>& fn) {
  grid.validate();
  const int n = grid.bins;
  const double dx = grid.bin_width();
  CVector k(n);
  for (int j = 0; j < n; ++j) {
    const int offset = j < n / 2 ? j : j - n;
    k[j] = fn(offset * dx);
  }
  return k;
}

LinearOperator blur_operator(const GridSpec& grid) {
  return LinearOperator::cyclic_convolution(kernel_samples(grid, blur_kernel), grid.bin_width());
}

SpectrumCheck check_bounds(const LinearOperator& blur, double omega, const SpectralBounds& bounds) {
  const Eigen::VectorXd eig = omega * blur.convolution_gram_spectrum();
  SpectrumCheck c;
  c.min_eigenvalue = eig.minCoeff();
  c.max_eigenvalue = eig.maxCoeff();
  c.within = c.min_eigenvalue >= bounds.l_min() && c.max_eigenvalue <= bounds.l_max();
  return c;
}

int first_crossing(const std::vector<int>& ks, const std::vector<double>& errors, double threshold) {
  for (std::size_t i = 0; i < ks.size() && i < errors.size(); ++i) {
    if (errors[i] <= threshold) return ks[i];
  }
  return -1;
}

Result run_deconv(const Config& config) {
  config.grid.validate();
  if (config.iters < 0) throw std::invalid_argument("iters must be non-negative");
  if (config.snapshot_every < 1) throw std::invalid_argument("snapshot_every must be positive");
  const SpectralBounds bounds(config.l_min, config.l_max, BoundsSource::user_supplied);

  Result r;
  r.signals = synthesize_signals(config.grid);
  const LinearOperator blur =
      config.zero_kernel
          ? LinearOperator::cyclic_convolution(CVector::Zero(config.grid.bins), config.grid.bin_width())
          : blur_operator(config.grid);
  r.y = blur.apply(r.signals.f);
  r.spectrum = check_bounds(blur, config.omega, bounds);

  for (int k = 0; k <= config.iters; ++k) r.ks.push_back(k);
  for (int k = 0; k <= config.iters; k += config.snapshot_every) r.snapshots.push_back({k, {}, {}});

  auto solve = [&](const InertialSchedule& schedule, bool keep_plain, bool keep_cheb) {
    SolverConfig sc{.op = blur, .y = r.y, .omega = config.omega, .schedule = schedule};
    sc.max_iter = config.iters;
    sc.reference = r.signals.f;
    sc.initial = r.y;
    sc.record_every = 1;
    sc.measure = config.grid.bin_width();
    if (keep_plain || keep_cheb) {
      sc.observer = [&](int k, const CVector& x) {
        if (k % config.snapshot_every != 0) return;
        auto& snap = r.snapshots[static_cast<std::size_t>(k / config.snapshot_every)];
        if (keep_plain) snap.plain = x;
        if (keep_cheb) snap.chebyshev = x;
      };
    }
    const SolverRun run_result = run(sc);
    std::vector<double> curve;
    curve.reserve(run_result.history.size());
    for (const auto& h : run_result.history) curve.push_back(*h.error_norm);
    return curve;
  };

  r.labels.push_back("plain");
  r.errors.push_back(solve(InertialSchedule::constant(1.0), true, false));
  bool snapshot_taken = false;
  for (int period : config.periods) {
    const bool keep = period == config.snapshot_period && !snapshot_taken;
    snapshot_taken = snapshot_taken || keep;
    r.labels.push_back("cheb_T" + std::to_string(period));
    r.errors.push_back(solve(InertialSchedule::chebyshev(bounds, period, config.factor_order), false, keep));
  }
  if (!snapshot_taken) {
    solve(InertialSchedule::chebyshev(bounds, config.snapshot_period, config.factor_order), false, true);
  }
  return r;
}

}  // namespace landweber::deconv
