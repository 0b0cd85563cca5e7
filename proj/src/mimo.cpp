#include "landweber/mimo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace landweber::mimo {

Constellation::Constellation(std::vector<Complex> points) : points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("constellation must contain at least one point");
}

Constellation Constellation::psk(int order) {
  if (order < 1) throw std::invalid_argument("PSK order must be positive");
  std::vector<Complex> pts;
  pts.reserve(static_cast<std::size_t>(order));
  for (int k = 0; k < order; ++k) pts.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / order));
  return Constellation(std::move(pts));
}

double Constellation::max_modulus() const {
  double m = 0.0;
  for (const auto& p : points_) m = std::max(m, std::abs(p));
  return m;
}

Rng trial_rng(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t stream) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(master_seed), hi(master_seed), lo(trial), hi(trial), lo(stream), hi(stream)};
  return Rng(seq);
}

CMatrix sample_channel(int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("channel dimension must be positive");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CMatrix h(n, n);
  // Column-major fill order is part of the reproducibility contract.
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      h(i, j) = Complex(re, im);
    }
  }
  return h;
}

CMatrix sample_channel(int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_channel(n, rng);
}

std::vector<int> sample_source(int n, const Constellation& constellation, Rng& rng) {
  if (n < 1) throw std::invalid_argument("source length must be positive");
  std::uniform_int_distribution<int> pick(0, constellation.order() - 1);
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (auto& v : idx) v = pick(rng);
  return idx;
}

CVector symbols_to_vector(std::span<const int> indices, const Constellation& constellation) {
  CVector x(static_cast<Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) x[static_cast<Index>(i)] = constellation[indices[i]];
  return x;
}

Complex soft_projection(Complex r, const Constellation& constellation, double alpha2) {
  if (!(alpha2 > 0.0)) throw std::invalid_argument("alpha^2 must be positive");
  const auto pts = constellation.points();
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& p : pts) top = std::max(top, -std::norm(r - p) / alpha2);
  Complex num{0.0, 0.0};
  double den = 0.0;
  for (const auto& p : pts) {
    const double w = std::exp(-std::norm(r - p) / alpha2 - top);
    num += w * p;
    den += w;
  }
  return num / den;
}

CVector mmse_detect(const CMatrix& h, const CVector& y, double noise_var) {
  if (y.size() != h.rows()) throw DimensionError("observation length does not match channel rows");
  if (!(noise_var >= 0.0)) throw std::invalid_argument("noise variance must be non-negative");
  CMatrix gram = h.adjoint() * h;
  gram.diagonal().array() += noise_var;
  Eigen::LLT<CMatrix> llt(gram);
  if (llt.info() != Eigen::Success) throw std::runtime_error("MMSE system is not positive definite");
  CVector x = llt.solve(h.adjoint() * y);
  if (!x.allFinite()) throw std::runtime_error("MMSE solve produced non-finite values");
  return x;
}

std::vector<int> hard_decision(const CVector& x, const Constellation& constellation) {
  std::vector<int> out(static_cast<std::size_t>(x.size()));
  for (Index i = 0; i < x.size(); ++i) {
    int best = 0;
    double best_d = std::norm(x[i] - constellation[0]);
    for (int k = 1; k < constellation.order(); ++k) {
      const double d = std::norm(x[i] - constellation[k]);
      // Distances equal up to rounding count as a tie.
      if (d < best_d - 1e-12 * best_d) {
        best = k;
        best_d = d;
      }
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

double noise_sigma(double snr_db) { return std::sqrt(std::pow(10.0, -snr_db / 10.0)); }

ChannelInstance make_instance(int n, const Constellation& constellation, double sigma, std::uint64_t master_seed,
                              std::uint64_t trial) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("noise sigma must be non-negative");
  ChannelInstance c;
  Rng channel_rng = trial_rng(master_seed, trial, 0);
  Rng source_rng = trial_rng(master_seed, trial, 1);
  Rng noise_rng = trial_rng(master_seed, trial, 2);
  c.h = sample_channel(n, channel_rng);
  c.symbols = sample_source(n, constellation, source_rng);
  c.x = symbols_to_vector(c.symbols, constellation);
  c.sigma = sigma;
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CVector w(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(noise_rng);
    const double im = normal(noise_rng);
    w[i] = sigma * Complex(re, im);
  }
  c.y = c.h * c.x + w;
  return c;
}

}  // namespace landweber::mimo
