#include <doctest.h>

#include <cmath>
#include <random>

#include "landweber/spectral.hpp"
#include "oracles.hpp"

using namespace landweber;

TEST_CASE("bounds reject invalid intervals") {
  CHECK_THROWS(SpectralBounds(0.0, 1.0));
  CHECK_THROWS(SpectralBounds(-1.0, 1.0));
  CHECK_THROWS(SpectralBounds(2.0, 1.0));
  CHECK_THROWS(SpectralBounds(1.0, INFINITY));
  CHECK_NOTHROW(SpectralBounds(1.0, 1.0));
  SpectralBounds b(0.1, 0.9);
  CHECK(b.center() == doctest::Approx(0.5));
  CHECK(b.half_width() == doctest::Approx(0.4));
}

TEST_CASE("power iteration on a diagonal matrix") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  d(2, 2) = 3.0;
  auto b = extreme_eigenvalues(LinearOperator::dense(d), 1.0);
  CHECK(b.l_min() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(b.l_max() == doctest::Approx(9.0).epsilon(1e-8));
  CHECK(b.source() == BoundsSource::power_iteration);
}

TEST_CASE("power iteration on the identity") {
  auto b = extreme_eigenvalues(LinearOperator::identity(5), 0.3);
  CHECK(b.l_min() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(b.l_max() == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("power iteration agrees with the Jacobi oracle") {
  std::mt19937_64 rng(41);
  for (int n : {8, 4, 12, 16, 16, 16}) {
    CMatrix h = oracle::random_complex_matrix(n, n, rng);
    auto eig = oracle::hermitian_eigenvalues(oracle::gram(h));
    auto b = extreme_eigenvalues(LinearOperator::dense(h), 1.0, {1e-14, 200000});
    CHECK(std::abs(b.l_max() - eig.back()) <= 1e-6 * eig.back());
    CHECK(std::abs(b.l_min() - eig.front()) <= 1e-6 * eig.front());
  }
}

TEST_CASE("power iteration reports non-convergence") {
  std::mt19937_64 rng(43);
  CMatrix h = oracle::random_complex_matrix(16, 16, rng);
  CHECK_THROWS_AS(extreme_eigenvalues(LinearOperator::dense(h), 1.0, {1e-15, 2}), ConvergenceError);
}

TEST_CASE("Marchenko-Pastur examples") {
  auto square = marchenko_pastur_bounds(32, 32, 1.0, 0.01);
  CHECK(square.l_max() == doctest::Approx(128.0));
  CHECK(square.l_min() == doctest::Approx(1.28));
  CHECK(square.source() == BoundsSource::marchenko_pastur);

  auto tall = marchenko_pastur_bounds(4, 1, 1.0, 0.01);
  CHECK(tall.l_max() == doctest::Approx(9.0));
  CHECK(tall.l_min() == doctest::Approx(1.0));

  auto scaled = marchenko_pastur_bounds(16, 16, 2.5, 0.2);
  CHECK(scaled.l_min() == doctest::Approx(0.2 * scaled.l_max()));
}

TEST_CASE("sampled 32x32 Gram spectra stay inside the Marchenko-Pastur edge") {
  std::mt19937_64 rng(47);
  const double l_max = marchenko_pastur_bounds(32, 32, 1.0).l_max();
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    Eigen::VectorXd eig = gram_eigenvalues(oracle::random_complex_matrix(32, 32, rng));
    CHECK(eig.minCoeff() >= -1e-9);
    worst = std::max(worst, eig.maxCoeff());
  }
  // top-edge fluctuations at n = 32 are about 8 (Tracy-Widom scale); the
  // largest of 1000 draws lands near 1.07..1.11 * l_max
  CHECK(worst <= l_max * 1.2);
  CHECK(worst >= l_max * 0.9);
}

TEST_CASE("iteration spectral radius examples") {
  CHECK(iteration_spectral_radius(CMatrix::Identity(3, 3), 0.5) == doctest::Approx(0.5));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  CHECK(iteration_spectral_radius(d, 1.0) == doctest::Approx(3.0));
  d(0, 0) = std::sqrt(0.1);
  d(1, 1) = std::sqrt(0.9);
  CHECK(iteration_spectral_radius(d, 2.0) == doctest::Approx(0.8));
  CHECK_THROWS(iteration_spectral_radius(CMatrix::Identity(513, 513), 1.0));
}

TEST_CASE("optimal step") {
  CHECK(omega_opt(SpectralBounds(0.1, 0.9)) == doctest::Approx(2.0));
  CHECK(omega_opt(SpectralBounds(1.0, 1.0)) == 1.0);
  CHECK(omega_opt(SpectralBounds(1.28, 128.0)) == doctest::Approx(2.0 / 129.28));
  CHECK(omega_opt(SpectralBounds(1.28, 128.0)) == doctest::Approx(0.015470).epsilon(1e-4));
}

TEST_CASE("optimal step radius identity") {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 20; ++t) {
    CMatrix h = oracle::random_complex_matrix(10, 10, rng);
    auto b = exact_gram_bounds(h);
    const double rho = iteration_spectral_radius(h, omega_opt(b));
    CHECK(std::abs(rho - (b.l_max() - b.l_min()) / (b.l_max() + b.l_min())) <= 1e-9);
  }
}

TEST_CASE("exact bounds match the oracle and scale") {
  std::mt19937_64 rng(59);
  CMatrix h = oracle::random_complex_matrix(9, 7, rng);
  auto eig = oracle::hermitian_eigenvalues(oracle::gram(h));
  auto b = exact_gram_bounds(h, 0.5);
  CHECK(b.l_min() == doctest::Approx(0.5 * eig.front()).epsilon(1e-10));
  CHECK(b.l_max() == doctest::Approx(0.5 * eig.back()).epsilon(1e-10));
  CHECK(b.source() == BoundsSource::exact);
}
