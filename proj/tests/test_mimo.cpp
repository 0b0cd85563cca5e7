#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "landweber/mimo.hpp"
#include "landweber/solver.hpp"
#include "landweber/spectral.hpp"
#include "oracles.hpp"

using namespace landweber;
using namespace landweber::mimo;

TEST_CASE("8-PSK constellation") {
  auto c = Constellation::psk(8);
  REQUIRE(c.order() == 8);
  for (int k = 0; k < 8; ++k) {
    CHECK(std::abs(c[k]) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::arg(c[k] * std::polar(1.0, -2.0 * std::numbers::pi * k / 8.0)) == doctest::Approx(0.0));
  }
  CHECK(c.max_modulus() == doctest::Approx(1.0));
  CHECK_THROWS(Constellation({}));
}

TEST_CASE("channel moments") {
  Rng rng = trial_rng(5, 0, 0);
  Complex sum{0.0, 0.0};
  double power = 0.0;
  int count = 0;
  while (count < 100000) {
    CMatrix h = sample_channel(20, rng);
    sum += h.sum();
    power += h.squaredNorm();
    count += static_cast<int>(h.size());
  }
  CHECK(std::abs(sum / static_cast<double>(count)) <= 0.01);
  CHECK(power / count == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("channel sampling is reproducible") {
  CHECK(sample_channel(8, std::uint64_t{42}) == sample_channel(8, std::uint64_t{42}));
  CHECK(sample_channel(8, std::uint64_t{42}) != sample_channel(8, std::uint64_t{43}));
  Rng a = trial_rng(1, 2, 3);
  Rng b = trial_rng(1, 2, 3);
  CHECK(a() == b());
  CHECK(trial_rng(1, 2, 0)() != trial_rng(1, 2, 1)());
  CHECK(trial_rng(1, 2, 0)() != trial_rng(1, 3, 0)());
  CHECK(trial_rng(1, 0, 0)() != trial_rng(1ull << 32, 0, 0)());
}

TEST_CASE("source symbols are uniform over the constellation") {
  auto c = Constellation::psk(8);
  Rng rng = trial_rng(9, 0, 1);
  std::vector<int> counts(8, 0);
  const int draws = 100000;
  auto idx = sample_source(draws, c, rng);
  for (int v : idx) {
    REQUIRE(v >= 0);
    REQUIRE(v < 8);
    ++counts[static_cast<std::size_t>(v)];
  }
  for (int cnt : counts) CHECK(std::abs(static_cast<double>(cnt) / draws - 0.125) <= 0.005);
  CVector x = symbols_to_vector(std::span<const int>(idx.data(), 100), c);
  for (Index i = 0; i < x.size(); ++i) {
    CHECK(x[i] == c[idx[static_cast<std::size_t>(i)]]);
    CHECK(std::abs(x[i]) == doctest::Approx(1.0));
  }
}

TEST_CASE("soft projection") {
  auto psk = Constellation::psk(8);
  CHECK(std::abs(soft_projection(0.0, psk, 0.5)) < 1e-15);

  Constellation bpsk({1.0, -1.0});
  CHECK(soft_projection(1.0, bpsk, 0.5).real() == doctest::Approx(std::tanh(4.0)).epsilon(1e-14));
  CHECK(soft_projection(1.0, bpsk, 0.5).real() == doctest::Approx(0.999329).epsilon(1e-6));

  const Complex r = 0.8 * psk[3] + Complex(0.05, -0.02);
  CHECK(std::abs(soft_projection(r, psk, 1e-4) - psk[3]) < 1e-12);
  CHECK(std::abs(soft_projection(r, psk, 1e-3) - psk[3]) < std::abs(soft_projection(r, psk, 1e-1) - psk[3]));

  // far-away input: every exponent underflows without the max shift
  const Complex far(1e3, -2e3);
  const Complex p = soft_projection(far, psk, 0.25);
  CHECK(std::isfinite(p.real()));
  CHECK(std::isfinite(p.imag()));

  std::mt19937_64 rng(107);
  std::normal_distribution<double> nd(0.0, 3.0);
  for (int t = 0; t < 1000; ++t) {
    const Complex in(nd(rng), nd(rng));
    CHECK(std::abs(soft_projection(in, psk, 0.5)) <= psk.max_modulus() + 1e-12);
  }
  CHECK_THROWS(soft_projection(0.0, psk, 0.0));
}

TEST_CASE("MMSE examples") {
  std::mt19937_64 rng(109);
  CVector y = oracle::random_complex_vector(4, rng);
  CMatrix eye = CMatrix::Identity(4, 4);
  CHECK((mmse_detect(eye, y, 0.0) - y).norm() < 1e-15);
  CHECK((mmse_detect(eye, y, 1.0) - y / 2.0).norm() < 1e-15);
}

TEST_CASE("MMSE matches the elimination oracle") {
  std::mt19937_64 rng(113);
  for (int t = 0; t < 50; ++t) {
    CMatrix h = oracle::random_complex_matrix(4, 4, rng);
    CVector y = oracle::random_complex_vector(4, rng);
    const double var = 0.1 * (t + 1);
    CMatrix a = oracle::gram(h) + var * CMatrix::Identity(4, 4);
    CVector expected = oracle::gaussian_solve(a, h.adjoint() * y);
    CHECK((mmse_detect(h, y, var) - expected).norm() <= 1e-10 * expected.norm());
  }
}

TEST_CASE("MMSE approaches least squares as the noise variance vanishes") {
  std::mt19937_64 rng(127);
  for (int t = 0; t < 10; ++t) {
    CMatrix h = oracle::random_complex_matrix(6, 6, rng);
    CVector y = oracle::random_complex_vector(6, rng);
    CVector ls = oracle::least_squares(h, y);
    double prev = INFINITY;
    for (double var : {1e-2, 1e-4, 1e-6}) {
      const double gap = (mmse_detect(h, y, var) - ls).norm();
      CHECK(gap < prev);
      prev = gap;
    }
    CHECK(prev <= 1e-3 * ls.norm());
  }
}

TEST_CASE("MMSE failure modes") {
  CMatrix zero = CMatrix::Zero(3, 3);
  CHECK_THROWS_AS(mmse_detect(zero, CVector::Zero(3), 0.0), std::runtime_error);
  CHECK_THROWS_AS(mmse_detect(zero, CVector::Zero(2), 1.0), DimensionError);
}

TEST_CASE("noiseless MMSE recovers the symbols") {
  auto c = Constellation::psk(8);
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    auto inst = make_instance(32, c, 0.0, 3, trial);
    CHECK(hard_decision(mmse_detect(inst.h, inst.y, 0.0), c) == inst.symbols);
  }
}

TEST_CASE("hard decision") {
  auto c = Constellation::psk(8);
  CVector pts(8);
  for (int k = 0; k < 8; ++k) pts[k] = c[k];
  CHECK(hard_decision(pts, c) == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});

  CVector scaled(1);
  scaled[0] = 0.9 * std::polar(1.0, 2.0 * std::numbers::pi * 3.0 / 8.0);
  CHECK(hard_decision(scaled, c) == std::vector<int>{3});

  CVector bisector(2);
  bisector[0] = std::polar(0.7, std::numbers::pi / 8.0);
  bisector[1] = 0.5 * (c[0] + c[1]);
  CHECK(hard_decision(bisector, c) == std::vector<int>{0, 0});
  CVector upper(1);
  upper[0] = 0.5 * (c[6] + c[7]);
  CHECK(hard_decision(upper, c) == std::vector<int>{6});
}

TEST_CASE("noise level") {
  CHECK(noise_sigma(0.0) == doctest::Approx(1.0));
  CHECK(noise_sigma(10.0) == doctest::Approx(std::sqrt(0.1)));
  CHECK(noise_sigma(20.0) == doctest::Approx(0.1));
}

TEST_CASE("channel instances regenerate bit-exactly") {
  auto c = Constellation::psk(8);
  auto a = make_instance(16, c, 0.3, 77, 5);
  auto b = make_instance(16, c, 0.3, 77, 5);
  CHECK(a.h == b.h);
  CHECK(a.y == b.y);
  CHECK(a.symbols == b.symbols);
  auto quiet = make_instance(16, c, 0.0, 77, 5);
  CHECK(quiet.h == a.h);
  CHECK(quiet.symbols == a.symbols);
  CHECK((quiet.y - quiet.h * quiet.x).norm() == 0.0);
  CHECK(make_instance(16, c, 0.3, 77, 6).h != a.h);
}

TEST_CASE("projected iteration is stationary on a noiseless solution") {
  auto c = Constellation::psk(8);
  auto inst = make_instance(32, c, 0.0, 11, 0);
  const double omega = 1.0 / marchenko_pastur_bounds(32, 32, 1.0).l_max();
  double worst = 0.0;
  run({.op = LinearOperator::dense(inst.h), .y = inst.y, .omega = omega,
       .projector = [&](Complex v, int) { return soft_projection(v, c, 1e-3); }, .max_iter = 50,
       .initial = inst.x,
       .observer = [&](int, const CVector& x) { worst = std::max(worst, (x - inst.x).norm()); }});
  CHECK(worst <= 1e-12);
}
