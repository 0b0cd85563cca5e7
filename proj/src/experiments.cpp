#include "landweber/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "landweber/spectral.hpp"
#include "parallel.hpp"

namespace landweber::mimo {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

void require_periods(const std::vector<int>& periods) {
  for (int t : periods) require(t >= 1, "periods must be >= 1");
}

struct LsqTrial {
  std::vector<std::vector<double>> sq_err;  // [curve][record]
  std::vector<int> ks;
  LsqTrialRates rates;
};

LsqTrial lsq_trial(const LsqConfig& config, const Constellation& constellation, std::int64_t trial) {
  const ChannelInstance inst =
      make_instance(config.n, constellation, config.sigma, config.seed, static_cast<std::uint64_t>(trial));
  const Eigen::VectorXd eig = gram_eigenvalues(inst.h);
  const SpectralBounds gram(eig.minCoeff(), eig.maxCoeff(), BoundsSource::exact);
  const double omega = omega_opt(gram);
  const SpectralBounds b = gram.scaled(omega);

  LsqTrial out;
  out.rates.omega_opt = omega;
  out.rates.l_min = b.l_min();
  out.rates.l_max = b.l_max();
  out.rates.rho = (1.0 - omega * eig.array()).abs().maxCoeff();
  for (int t = 1; t <= config.rate_max_period; ++t) out.rates.u.push_back(convergence_bound(b, t).value);

  const LinearOperator op = LinearOperator::dense(inst.h);
  auto solve = [&](const InertialSchedule& schedule) {
    SolverConfig sc{.op = op, .y = inst.y, .omega = omega, .schedule = schedule};
    sc.max_iter = config.iters;
    sc.reference = inst.x;
    sc.initial = config.start_at_truth ? inst.x : CVector::Zero(config.n);
    sc.record_every = config.record_every;
    const SolverRun r = run(sc);
    std::vector<double> curve;
    std::vector<int> ks;
    curve.reserve(r.history.size());
    for (const auto& h : r.history) {
      curve.push_back(*h.error_norm * *h.error_norm);
      ks.push_back(h.k);
    }
    if (out.ks.empty()) out.ks = std::move(ks);
    return curve;
  };
  out.sq_err.push_back(solve(InertialSchedule::constant(1.0)));
  for (int t : config.periods) out.sq_err.push_back(solve(InertialSchedule::chebyshev(b, t, config.factor_order)));
  return out;
}

}  // namespace

LsqResult run_lsq_convergence(const LsqConfig& config) {
  require(config.n >= 1, "n must be >= 1");
  require(config.trials >= 1, "trials must be >= 1");
  require(config.iters >= 0, "iters must be >= 0");
  require(config.sigma >= 0.0, "sigma must be >= 0");
  require(config.rate_max_period >= 1, "rate_max_period must be >= 1");
  require_periods(config.periods);
  const Constellation constellation = Constellation::psk(config.psk_order);

  std::vector<LsqTrial> trials(static_cast<std::size_t>(config.trials));
  detail::parallel_for(config.trials, config.parallel, [&](std::int64_t t) {
    trials[static_cast<std::size_t>(t)] = lsq_trial(config, constellation, t);
  });

  LsqResult r;
  r.ks = trials.front().ks;
  r.labels.push_back("plain");
  for (int t : config.periods) r.labels.push_back("cheb_T" + std::to_string(t));
  r.mean_sq_err.assign(r.labels.size(), std::vector<double>(r.ks.size(), 0.0));
  r.mean_u.assign(static_cast<std::size_t>(config.rate_max_period), 0.0);
  const double inv = 1.0 / config.trials;
  // Summed in trial order so the result does not depend on thread scheduling.
  for (const auto& tr : trials) {
    for (std::size_t c = 0; c < r.labels.size(); ++c) {
      for (std::size_t i = 0; i < r.ks.size(); ++i) r.mean_sq_err[c][i] += tr.sq_err[c][i] * inv;
    }
    r.mean_rho += tr.rates.rho * inv;
    for (std::size_t t = 0; t < r.mean_u.size(); ++t) r.mean_u[t] += tr.rates.u[t] * inv;
    r.rates.push_back(tr.rates);
  }
  return r;
}

ModelCurves lsq_model_curves(const LsqResult& result, const std::vector<int>& periods) {
  ModelCurves m;
  m.labels.push_back("rho_pow_k");
  std::vector<double> rho;
  for (int k : result.ks) rho.push_back(std::pow(result.mean_rho, k));
  m.values.push_back(std::move(rho));
  for (int t : periods) {
    if (t < 1 || static_cast<std::size_t>(t) > result.mean_u.size()) {
      throw std::invalid_argument("period " + std::to_string(t) + " exceeds rate_max_period");
    }
    const double u = result.mean_u[static_cast<std::size_t>(t - 1)];
    std::vector<double> per_period;
    std::vector<double> per_step;
    for (int k : result.ks) {
      per_period.push_back(std::pow(u, static_cast<double>(k) / t));
      per_step.push_back(std::pow(u, k));
    }
    m.labels.push_back("U" + std::to_string(t) + "_pow_k_over_T");
    m.values.push_back(std::move(per_period));
    m.labels.push_back("U" + std::to_string(t) + "_pow_k");
    m.values.push_back(std::move(per_step));
  }
  return m;
}

std::pair<double, double> SerPoint::confidence_interval() const {
  if (symbols <= 0) return {0.0, 1.0};
  const double z = 1.96;
  const double nn = static_cast<double>(symbols);
  const double p = ser();
  const double denom = 1.0 + z * z / nn;
  const double centre = (p + z * z / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::vector<std::string> ser_detector_names(const SerConfig& config) {
  std::vector<std::string> names{"mmse", "landweber"};
  for (int t : config.periods) names.push_back("cheb_T" + std::to_string(t));
  return names;
}

namespace {

struct DetectorSetup {
  double omega = 0.0;
  SpectralBounds b_bounds;  // spectrum bounds of omega * H^H H
};

DetectorSetup detector_setup(const SerConfig& config) {
  const SpectralBounds mp = marchenko_pastur_bounds(config.n, config.n, 1.0, config.floor_ratio);
  const double omega = config.step_rule == StepRule::omega_opt ? omega_opt(mp) : 1.0 / mp.l_max();
  return {omega, mp.scaled(omega)};
}

}  // namespace

CVector projected_landweber_detect(const CMatrix& h, const CVector& y, const Constellation& constellation,
                                   const SerConfig& config, int period) {
  const DetectorSetup setup = detector_setup(config);
  SolverConfig sc{.op = LinearOperator::dense(h), .y = y, .omega = setup.omega};
  sc.schedule = period == 0 ? InertialSchedule::constant(1.0)
                            : InertialSchedule::chebyshev(setup.b_bounds, period, config.factor_order);
  sc.projector = [&constellation, &config](Complex v, int k) {
    return soft_projection(v, constellation, k < config.alpha_switch ? config.alpha2_early : config.alpha2_late);
  };
  sc.projection_order = config.projection_order;
  sc.max_iter = config.iters;
  sc.initial = CVector::Zero(h.cols());
  sc.record_every = config.iters > 0 ? config.iters : 1;
  return run(sc).x;
}

std::vector<SerPoint> run_ser_sweep(const SerConfig& config) {
  require(config.n >= 1, "n must be >= 1");
  require(config.iters >= 0, "iters must be >= 0");
  require(config.min_errors >= 1, "min_errors must be >= 1");
  require(config.max_trials >= 1, "max_trials must be >= 1");
  require(config.batch >= 1, "batch must be >= 1");
  require(config.alpha2_early > 0.0 && config.alpha2_late > 0.0, "alpha2 values must be positive");
  require(!config.snr_db.empty(), "snr grid must not be empty");
  for (double s : config.snr_db) require(std::isfinite(s), "snr values must be finite");
  require_periods(config.periods);
  detector_setup(config);  // validates floor_ratio

  const Constellation constellation = Constellation::psk(config.psk_order);
  const std::vector<std::string> names = ser_detector_names(config);
  const std::size_t num_det = names.size();
  std::vector<SerPoint> out;

  for (double snr : config.snr_db) {
    const double sigma = noise_sigma(snr);
    std::vector<SerPoint> points(num_det);
    for (std::size_t d = 0; d < num_det; ++d) {
      points[d].snr_db = snr;
      points[d].detector = names[d];
    }
    std::vector<bool> active(num_det, true);
    std::int64_t done = 0;
    while (done < config.max_trials) {
      const std::int64_t count = std::min<std::int64_t>(config.batch, config.max_trials - done);
      // per_trial[t][d] = (errors, diverged) for active detectors
      std::vector<std::vector<std::pair<int, bool>>> per_trial(static_cast<std::size_t>(count),
                                                               std::vector<std::pair<int, bool>>(num_det));
      detail::parallel_for(count, config.parallel, [&](std::int64_t i) {
        const auto trial = static_cast<std::uint64_t>(done + i);
        const ChannelInstance inst = make_instance(config.n, constellation, sigma, config.seed, trial);
        auto& row = per_trial[static_cast<std::size_t>(i)];
        for (std::size_t d = 0; d < num_det; ++d) {
          if (!active[d]) continue;
          try {
            CVector xhat;
            if (d == 0) {
              xhat = mmse_detect(inst.h, inst.y, sigma * sigma);
            } else {
              const int period = d == 1 ? 0 : config.periods[d - 2];
              xhat = projected_landweber_detect(inst.h, inst.y, constellation, config, period);
            }
            const std::vector<int> dec = hard_decision(xhat, constellation);
            int errs = 0;
            for (std::size_t s = 0; s < dec.size(); ++s) errs += dec[s] != inst.symbols[s];
            row[d] = {errs, false};
          } catch (const DivergenceError&) {
            row[d] = {config.n, true};
          }
        }
      });
      for (const auto& row : per_trial) {
        for (std::size_t d = 0; d < num_det; ++d) {
          if (!active[d]) continue;
          points[d].errors += row[d].first;
          points[d].diverged += row[d].second ? 1 : 0;
          points[d].symbols += config.n;
          points[d].trials += 1;
        }
      }
      done += count;
      bool any = false;
      for (std::size_t d = 0; d < num_det; ++d) {
        if (points[d].errors >= config.min_errors) active[d] = false;
        any = any || active[d];
      }
      if (!any) break;
    }
    out.insert(out.end(), points.begin(), points.end());
  }
  return out;
}

}  // namespace landweber::mimo
