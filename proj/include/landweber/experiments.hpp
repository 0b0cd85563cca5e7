#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "landweber/mimo.hpp"
#include "landweber/schedule.hpp"
#include "landweber/solver.hpp"

namespace landweber::mimo {

// ---------------------------------------------------------------------------
// Least-squares convergence study: plain vs Chebyshev-accelerated Landweber
// on n x n complex Gaussian channels with PSK sources.

struct LsqConfig {
  int n = 32;
  double sigma = 1e-4;
  int trials = 100;
  int iters = 30000;
  std::vector<int> periods{2, 8};
  int rate_max_period = 16;  // U(T) reported for T = 1..rate_max_period
  int record_every = 0;      // 0: solver default
  int psk_order = 8;
  bool start_at_truth = false;
  FactorOrder factor_order = FactorOrder::natural;
  std::uint64_t seed = 1;
  int parallel = 1;
};

struct LsqTrialRates {
  double omega_opt = 0.0;
  double l_min = 0.0;  // extreme eigenvalues of omega_opt * H^H H
  double l_max = 0.0;
  double rho = 0.0;    // spectral radius of I - omega_opt H^H H
  std::vector<double> u;  // u[T-1] = U(T)
};

struct LsqResult {
  std::vector<int> ks;
  std::vector<std::string> labels;              // "plain", "cheb_T2", ...
  std::vector<std::vector<double>> mean_sq_err;  // [curve][index into ks]
  std::vector<LsqTrialRates> rates;              // one per trial
  double mean_rho = 0.0;
  std::vector<double> mean_u;                    // mean_u[T-1]
};

LsqResult run_lsq_convergence(const LsqConfig& config);

/// rho^k, and for each period both U^(k/T) and U^k.
struct ModelCurves {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;  // [curve][index into ks]
};
ModelCurves lsq_model_curves(const LsqResult& result, const std::vector<int>& periods);

// ---------------------------------------------------------------------------
// Symbol-error-rate sweep: MMSE vs projected Landweber detectors.

enum class StepRule {
  omega_opt,     // 2 / (l_min + l_max) of the Marchenko-Pastur bounds
  inverse_lmax,  // 1 / l_max
};

struct SerConfig {
  int n = 32;
  std::vector<double> snr_db{0.0, 2.0, 4.0, 6.0, 8.0, 10.0};
  int iters = 100;
  std::vector<int> periods{4, 8, 16};
  double alpha2_early = 0.5;
  double alpha2_late = 0.25;
  int alpha_switch = 20;  // alpha2_early for k < alpha_switch
  double floor_ratio = 0.1;
  StepRule step_rule = StepRule::omega_opt;
  ProjectionOrder projection_order = ProjectionOrder::project_then_inertial;
  FactorOrder factor_order = FactorOrder::natural;
  int psk_order = 8;
  std::int64_t min_errors = 100;
  std::int64_t max_trials = 10000;
  int batch = 50;
  std::uint64_t seed = 1;
  int parallel = 1;
};

struct SerPoint {
  double snr_db = 0.0;
  std::string detector;
  std::int64_t errors = 0;
  std::int64_t symbols = 0;
  std::int64_t trials = 0;
  std::int64_t diverged = 0;

  double ser() const { return symbols > 0 ? static_cast<double>(errors) / static_cast<double>(symbols) : 0.0; }
  /// Wilson score interval at 95% confidence.
  std::pair<double, double> confidence_interval() const;
};

/// Detector names in sweep order: "mmse", "landweber", "cheb_T<period>"...
std::vector<std::string> ser_detector_names(const SerConfig& config);

/// For each SNR point, runs trials in batches until every detector has at
/// least min_errors symbol errors or max_trials trials. All detectors see the
/// same (channel, source, noise) draws for a given trial index. A diverged
/// trial counts all n symbols as errors.
std::vector<SerPoint> run_ser_sweep(const SerConfig& config);

/// Projected Landweber detector for one instance. period 0 selects the
/// constant (un-accelerated) schedule.
CVector projected_landweber_detect(const CMatrix& h, const CVector& y, const Constellation& constellation,
                                   const SerConfig& config, int period);

}  // namespace landweber::mimo
