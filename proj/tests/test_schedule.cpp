#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "landweber/schedule.hpp"

using namespace landweber;

namespace {

double grid_max(std::span<const double> factors, double lo, double hi, int points) {
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double lambda = lo + (hi - lo) * i / (points - 1);
    worst = std::max(worst, std::abs(contraction_polynomial(factors, lambda)));
  }
  return worst;
}

}  // namespace

TEST_CASE("T = 1 factor is the optimal step") {
  for (auto [lo, hi] : {std::pair{0.1, 0.9}, {1.28, 128.0}, {0.3, 0.3}, {1e-6, 7.0}}) {
    SpectralBounds b(lo, hi);
    auto s = chebyshev_factors(b, 1);
    REQUIRE(s.period() == 1);
    CHECK(s.factor(0) == omega_opt(b));
  }
}

TEST_CASE("T = 2 factors for (0.1, 0.9)") {
  auto s = chebyshev_factors(SpectralBounds(0.1, 0.9), 2);
  REQUIRE(s.period() == 2);
  CHECK(s.factor(0) == doctest::Approx(1.0 / (0.5 + 0.4 * std::cos(M_PI / 4.0))).epsilon(1e-14));
  CHECK(s.factor(1) == doctest::Approx(1.0 / (0.5 + 0.4 * std::cos(3.0 * M_PI / 4.0))).epsilon(1e-14));
  CHECK(s.factor(0) == doctest::Approx(1.277396).epsilon(1e-6));
  CHECK(s.factor(1) == doctest::Approx(4.604957).epsilon(1e-6));
  // reciprocals are the roots of 2 t^2 - 1 with t = (lambda - 0.5) / 0.4
  for (double w : s.factors()) {
    const double t = (1.0 / w - 0.5) / 0.4;
    CHECK(2.0 * t * t - 1.0 == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("degenerate bounds give equal factors") {
  auto s = chebyshev_factors(SpectralBounds(0.25, 0.25), 5);
  for (double w : s.factors()) CHECK(w == doctest::Approx(4.0));
  auto u = convergence_bound(SpectralBounds(0.25, 0.25), 5);
  CHECK(u.degenerate);
  CHECK(u.value == 0.0);
}

TEST_CASE("schedule is periodic and positive") {
  auto s = chebyshev_factors(SpectralBounds(0.01, 2.0), 7);
  for (std::int64_t k = 0; k < 50; ++k) {
    CHECK(s.factor(k) == s.factors()[static_cast<std::size_t>(k % 7)]);
    CHECK(s.factor(k) > 0.0);
    CHECK(std::isfinite(s.factor(k)));
  }
  CHECK(s.kind() == ScheduleKind::chebyshev);
  CHECK(s.bounds().has_value());
  CHECK_THROWS(chebyshev_factors(SpectralBounds(0.1, 0.9), 0));
}

TEST_CASE("reversed order holds the same factors") {
  SpectralBounds b(0.1, 0.9);
  auto natural = chebyshev_factors(b, 8);
  auto reversed = chebyshev_factors(b, 8, FactorOrder::reversed);
  for (int k = 0; k < 8; ++k) CHECK(reversed.factor(k) == natural.factor(7 - k));
}

TEST_CASE("closed-form U values") {
  SpectralBounds b(0.1, 0.9);
  CHECK(std::abs(convergence_bound(b, 8).value - 2.0 / (256.0 + 1.0 / 256.0)) <= 1e-12);
  CHECK(convergence_bound(b, 1).value == doctest::Approx(0.8).epsilon(1e-12));
  CHECK_FALSE(convergence_bound(b, 8).degenerate);
  double prev = 1.0;
  for (int t = 1; t <= 40; ++t) {
    const double u = convergence_bound(b, t).value;
    CHECK(u < prev);
    CHECK(u > 0.0);
    prev = u;
  }
}

TEST_CASE("U(8) matches the dense-grid maximum") {
  SpectralBounds b(0.1, 0.9);
  auto s = chebyshev_factors(b, 8);
  CHECK(std::abs(grid_max(s.factors(), 0.1, 0.9, 100001) - convergence_bound(b, 8).value) <= 1e-6);
}

TEST_CASE("U stays finite for tight lower bounds") {
  SpectralBounds b(1e-300, 1.0);
  auto u = convergence_bound(b, 16);
  CHECK(std::isfinite(u.value));
  CHECK(u.value <= 1.0);
  CHECK(u.value > 0.99);
}

TEST_CASE("grid check of the polynomial bound") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, double>> pairs{{0.1, 0.9}, {0.01, 1.0}, {1.28, 128.0}, {0.5, 0.6}};
  for (int i = 0; i < 6; ++i) {
    const double hi = 0.1 + 10.0 * unit(rng);
    pairs.emplace_back(hi * (0.001 + 0.9 * unit(rng)), hi);
  }
  for (auto [lo, hi] : pairs) {
    SpectralBounds b(lo, hi);
    for (int t = 1; t <= 16; ++t) {
      auto s = chebyshev_factors(b, t);
      CHECK(grid_max(s.factors(), lo, hi, 10000) <= convergence_bound(b, t).value + 1e-9);
    }
  }
}

TEST_CASE("permuting factors leaves the polynomial unchanged") {
  auto s = chebyshev_factors(SpectralBounds(0.05, 1.5), 6);
  std::vector<double> f(s.factors().begin(), s.factors().end());
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> p = f;
    std::shuffle(p.begin(), p.end(), rng);
    for (double lambda : {0.05, 0.2, 0.77, 1.1, 1.5}) {
      CHECK(contraction_polynomial(p, lambda) == doctest::Approx(contraction_polynomial(f, lambda)).epsilon(1e-9));
    }
  }
}

TEST_CASE("constant schedules") {
  auto one = constant_schedule(1.0);
  CHECK(one.period() == 1);
  CHECK(one.factor(12) == 1.0);
  CHECK(one.kind() == ScheduleKind::constant);
  CHECK_FALSE(one.warning().has_value());

  auto paper = constant_schedule(0.3);
  CHECK(paper.period() == 1);
  CHECK(paper.factor(0) == 0.3);

  auto edge = constant_schedule(1.9);
  CHECK_FALSE(edge.warning().has_value());
  auto outside = constant_schedule(2.5);
  CHECK(outside.warning().has_value());
  CHECK(constant_schedule(-0.1).warning().has_value());
}

TEST_CASE("empirical contraction") {
  auto t1 = chebyshev_factors(SpectralBounds(0.1, 0.9), 1);
  const double root = 1.0 / t1.factor(0);
  CHECK(empirical_contraction(t1, std::vector<double>{root}).value == doctest::Approx(0.0));

  const std::vector<double> edges{0.1, 0.9};
  auto r = empirical_contraction(t1, edges);
  CHECK(r.value == doctest::Approx(0.8));
  CHECK_FALSE(r.outside_bounds);

  auto t8 = chebyshev_factors(SpectralBounds(0.1, 0.9), 8);
  std::vector<double> grid;
  for (int i = 0; i < 1000; ++i) grid.push_back(0.1 + 0.8 * i / 999.0);
  const double u8 = convergence_bound(SpectralBounds(0.1, 0.9), 8).value;
  auto g = empirical_contraction(t8, grid);
  CHECK(g.value <= u8 + 1e-12);
  CHECK(g.value == doctest::Approx(u8).epsilon(1e-3));

  auto flagged = empirical_contraction(t8, std::vector<double>{0.05, 0.5});
  CHECK(flagged.outside_bounds);
}
