#pragma once

#include <functional>
#include <string>
#include <vector>

#include "landweber/operator.hpp"
#include "landweber/schedule.hpp"
#include "landweber/spectral.hpp"

namespace landweber::deconv {

/// Uniform periodic grid on [lo, hi) with `bins` cells; samples sit at the
/// cell midpoints lo + (i + 1/2) * dx.
struct GridSpec {
  double lo = -8.192;
  double hi = 8.192;
  int bins = 16384;

  double bin_width() const { return (hi - lo) / bins; }
  double point(int i) const { return lo + (i + 0.5) * bin_width(); }
  /// Throws std::invalid_argument unless bins is a power of two and hi > lo.
  void validate() const;
};

/// 0.5 e^{-x^2} + e^{-(x-2)^2} - e^{-(x-3)^2} + 0.5 e^{-(x-4)^2}
double source_signal(double x);
/// e^{-x^2}
double blur_kernel(double x);

struct Signals {
  CVector f;  // source on the midpoint grid
  CVector g;  // kernel on the midpoint grid (for plotting)
};

Signals synthesize_signals(const GridSpec& grid);

/// Samples fn at offsets j*dx in wraparound layout (index 0 is offset 0,
/// the upper half holds negative offsets).
CVector kernel_samples(const GridSpec& grid, const std::function<double(double)>& fn);

/// Convolution with blur_kernel on the grid.
LinearOperator blur_operator(const GridSpec& grid);

struct SpectrumCheck {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool within = false;  // both inside [bounds.l_min, bounds.l_max]
};

/// Compares the exact spectrum of omega * G*G (from the transfer function)
/// against the bounds handed to the Chebyshev schedule.
SpectrumCheck check_bounds(const LinearOperator& blur, double omega, const SpectralBounds& bounds);

struct Config {
  GridSpec grid;
  double omega = 0.3;
  double l_min = 0.1;
  double l_max = 0.9;
  std::vector<int> periods{1, 2, 8};
  int snapshot_period = 8;  // Chebyshev run shown next to plain in snapshots
  int iters = 300;
  int snapshot_every = 30;
  FactorOrder factor_order = FactorOrder::natural;
  bool zero_kernel = false;
};

struct Snapshot {
  int k = 0;
  CVector plain;
  CVector chebyshev;
};

struct Result {
  std::vector<int> ks;
  std::vector<std::string> labels;            // "plain", "cheb_T1", ...
  std::vector<std::vector<double>> errors;    // errors[curve][index into ks]
  std::vector<Snapshot> snapshots;
  Signals signals;
  CVector y;
  SpectrumCheck spectrum;
};

/// Blurs the source, then deconvolves from s0 = y with the constant-omega
/// iteration and a Chebyshev schedule per period, tracking the L2 error
/// ||s_k - f|| (grid norm weighted by dx) at every iteration.
Result run_deconv(const Config& config);

/// First k with error <= threshold, or -1.
int first_crossing(const std::vector<int>& ks, const std::vector<double>& errors, double threshold);

}  // namespace landweber::deconv
