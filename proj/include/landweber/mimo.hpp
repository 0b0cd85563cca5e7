#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "landweber/operator.hpp"

namespace landweber::mimo {

class Constellation {
 public:
  explicit Constellation(std::vector<Complex> points);

  /// exp(2 pi j k / order), k = 0..order-1.
  static Constellation psk(int order);

  std::span<const Complex> points() const { return points_; }
  int order() const { return static_cast<int>(points_.size()); }
  const Complex& operator[](int k) const { return points_[static_cast<std::size_t>(k)]; }
  double max_modulus() const;

 private:
  std::vector<Complex> points_;
};

using Rng = std::mt19937_64;

/// Independent generator for one (master seed, trial, stream) triple. Streams
/// separate the channel, source, and noise draws of a trial so that each is
/// reproducible on its own and trials can run in any order.
Rng trial_rng(std::uint64_t master_seed, std::uint64_t trial, std::uint64_t stream);

/// n x n matrix of i.i.d. CN(0, 1) entries (real and imaginary parts N(0, 1/2)).
CMatrix sample_channel(int n, Rng& rng);
CMatrix sample_channel(int n, std::uint64_t seed);

/// Uniform i.i.d. symbol indices into the constellation.
std::vector<int> sample_source(int n, const Constellation& constellation, Rng& rng);
CVector symbols_to_vector(std::span<const int> indices, const Constellation& constellation);

/// Gaussian-weighted mean of the constellation points with weights
/// exp(-|r - p|^2 / alpha2). The largest exponent is subtracted before
/// exponentiation.
Complex soft_projection(Complex r, const Constellation& constellation, double alpha2);

/// (H^H H + noise_var I)^{-1} H^H y via a Cholesky solve. Throws
/// std::runtime_error if the regularized Gram matrix is not positive definite.
CVector mmse_detect(const CMatrix& h, const CVector& y, double noise_var);

/// Nearest constellation index per entry; ties (distances equal to 1e-12
/// relative) go to the lowest index.
std::vector<int> hard_decision(const CVector& x, const Constellation& constellation);

/// sqrt(10^{-snr_db / 10})
double noise_sigma(double snr_db);

struct ChannelInstance {
  CMatrix h;
  std::vector<int> symbols;
  CVector x;
  double sigma = 0.0;
  CVector y;  // h x + w, w ~ CN(0, sigma^2 I)
};

/// Regenerable bit-exactly from (master_seed, trial).
ChannelInstance make_instance(int n, const Constellation& constellation, double sigma, std::uint64_t master_seed,
                              std::uint64_t trial);

}  // namespace landweber::mimo
