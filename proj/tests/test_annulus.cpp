// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pellet/annulus.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "pellet/detection.hpp"

using namespace pellet;
using pellet::testing::bisect;
using pellet::testing::naive_phi_scale;

namespace {

PelletInstance example_q_instance() {
  return pellet_instance(make_polynomial({{-4.0, 0.0},
                                          {1.0, 1.0},
                                          {-2.0, 0.0},
                                          {15.0, 0.0},
                                          {0.5, 0.0},
                                          {0.0, 0.0},
                                          {3.0, 0.0},
                                          {1.0, 0.0},
                                          {1.0, 0.0}}),
                         3);
}

// x^3 - 3x + 1 factors over 2 cos(2 pi j / 9); its positive roots have the
// closed forms below. Used as an exact oracle for the trinomial solvers.
const double kCubicUpper = 2.0 * std::cos(2.0 * std::numbers::pi / 9.0);   // 1.53208...
const double kCubicLower = 2.0 * std::cos(4.0 * std::numbers::pi / 9.0);   // 0.34729...

PelletInstance cubic_instance() { return make_instance({1.0, 3.0, 0.0, 1.0}, 1); }

Trinomial cubic_trinomial() {
  Trinomial tri;
  tri.alpha = 1.0;
  tri.beta = 3.0;
  tri.gamma = 1.0;
  tri.n = 3;
  tri.k = 1;
  tri.fit_point = 1.0;
  return tri;
}

std::pair<double, double> bisect_phi_roots(const PelletInstance& inst, double seed) {
  auto phi = [&](double x) { return eval_phi(inst, x).value; };
  REQUIRE(phi(seed) < 0.0);
  double hi = seed;
  while (phi(hi) < 0.0) hi *= 2.0;
  return {bisect(phi, 0.0, seed), bisect(phi, seed, hi)};
}

}  // namespace

TEST_CASE("trinomial fit is exact when phi is already a trinomial") {
  const PelletInstance inst = cubic_instance();
  for (double x_bar : {0.5, 1.0, 1.5}) {
    REQUIRE(eval_phi(inst, x_bar).value <= 0.0);
    const Trinomial tri = fit_trinomial(inst, x_bar);
    CHECK(tri.alpha == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tri.beta == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(tri.gamma == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(tri.fit_point == x_bar);
  }
}

TEST_CASE("trinomial fit: tangency and domination at the running example") {
  const PelletInstance inst = example_q_instance();
  const double x_bar = 1.02;
  const Trinomial tri = fit_trinomial(inst, x_bar);
  CHECK(tri.alpha > 0.0);
  CHECK(tri.beta > 0.0);
  CHECK(tri.gamma > 0.0);

  const PhiEval at_fit = eval_phi(inst, x_bar);
  const double scale = naive_phi_scale(inst, x_bar);
  CHECK(std::abs(eval_trinomial(tri, x_bar) - at_fit.value) <= 1e-12 * scale);

  const double f_deriv = pellet::testing::central_difference(
      [&](double t) { return eval_trinomial(tri, t); }, x_bar);
  const double phi_deriv = pellet::testing::central_difference(
      [&](double t) { return eval_phi(inst, t).value; }, x_bar);
  CHECK(std::abs(at_fit.derivative - phi_deriv) <= 1e-8 * std::max(1.0, scale));
  CHECK(std::abs(f_deriv - at_fit.derivative) <= 1e-8 * std::max(1.0, scale));

  for (int i = 0; i <= 600; ++i) {
    const double x = 2.4 * i / 600.0;
    CHECK(eval_trinomial(tri, x) >=
          eval_phi(inst, x).value - 1e-10 * std::max(1.0, naive_phi_scale(inst, x)));
  }
}

TEST_CASE("trinomial fit rejects points where phi is positive") {
  const PelletInstance inst = example_q_instance();
  REQUIRE(eval_phi(inst, 0.1).value > 0.0);
  CHECK_THROWS_AS(fit_trinomial(inst, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(fit_trinomial(inst, -1.0), std::invalid_argument);
}

TEST_CASE("surrogate fit constants and tangency") {
  const Trinomial tri = cubic_trinomial();
  const Surrogate sur = fit_surrogate(tri, 1.0);
  CHECK(sur.delta == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(sur.epsilon == doctest::Approx(4.0 / 3.0).epsilon(1e-15));

  // Tangency h(x_bar) = f(x_bar) holds wherever the fit is valid.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> xs(kCubicLower, kCubicUpper);
  for (int i = 0; i < 50; ++i) {
    const double x_bar = xs(rng);
    const Surrogate s = fit_surrogate(tri, x_bar);
    const double f = eval_trinomial(tri, x_bar);
    const double h = eval_surrogate(s, x_bar);
    CHECK(std::abs(h - f) <=
          8.0 * std::numeric_limits<double>::epsilon() *
              (tri.alpha * std::pow(x_bar, 3) + tri.beta * x_bar + tri.gamma));
  }
}

TEST_CASE("surrogate dominates its trinomial below the pole") {
  const PelletInstance inst = example_q_instance();
  const Trinomial tri = fit_trinomial(inst, 1.02);
  const Surrogate sur = fit_surrogate(tri, 1.02);
  const double pole = surrogate_pole(sur);
  CHECK(pole > 1.02);
  for (int i = 1; i < 400; ++i) {
    const double x = pole * i / 400.0;
    const double f = eval_trinomial(tri, x);
    const double h = eval_surrogate(sur, x);
    CHECK(h >= f - 1e-10 * std::max(1.0, std::abs(f)));
  }
}

TEST_CASE("surrogate roots: quadratic closed form") {
  const Trinomial tri = cubic_trinomial();
  const Surrogate sur = fit_surrogate(tri, 1.0);
  // 3 y^2 - 5 y + 5/3 = 0 with y = x.
  const auto [s1, s2] = surrogate_roots(sur);
  CHECK(s1 == doctest::Approx((5.0 - std::sqrt(5.0)) / 6.0).epsilon(1e-14));
  CHECK(s2 == doctest::Approx((5.0 + std::sqrt(5.0)) / 6.0).epsilon(1e-14));
  // Bracketing: r1 <= s1 <= x_bar <= s2 <= r2.
  CHECK(s1 >= kCubicLower - 1e-12);
  CHECK(s1 <= 1.0);
  CHECK(s2 >= 1.0);
  CHECK(s2 <= kCubicUpper + 1e-12);
}

TEST_CASE("surrogate roots stay real and bracketed for valid fit points") {
  std::mt19937_64 rng(1615);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_real_distribution<double> coef(0.1, 10.0);
    std::uniform_int_distribution<int> deg(3, 12);
    const int n = deg(rng);
    std::uniform_int_distribution<int> pick_k(1, n - 1);
    const int k = pick_k(rng);
    Trinomial tri;
    tri.alpha = coef(rng);
    tri.beta = coef(rng);
    tri.gamma = coef(rng);
    tri.n = n;
    tri.k = k;
    auto f = [&](double x) { return eval_trinomial(tri, x); };
    // Make sure this trinomial actually has two positive roots.
    const double x_min = std::pow(tri.beta * k / (tri.alpha * n), 1.0 / (n - k));
    if (f(x_min) >= 0.0) {
      --trial;
      continue;
    }
    double hi = x_min;
    while (f(hi) < 0.0) hi *= 2.0;
    const double r1 = bisect(f, 0.0, x_min);
    const double r2 = bisect(f, x_min, hi);
    std::uniform_real_distribution<double> xs(r1 * 1.0000001, r2 * 0.9999999);
    for (int i = 0; i < 10; ++i) {
      const double x_bar = xs(rng);
      const auto [s1, s2] = surrogate_roots(fit_surrogate(tri, x_bar));
      CHECK(s1 >= r1 * (1.0 - 1e-10));
      CHECK(s1 <= x_bar * (1.0 + 1e-12));
      CHECK(s2 >= x_bar * (1.0 - 1e-12));
      CHECK(s2 <= r2 * (1.0 + 1e-10));
    }
  }
}

TEST_CASE("trinomial root solve against the cubic closed form") {
  const Trinomial tri = cubic_trinomial();
  const TrinomialRoot upper = solve_trinomial_root(tri, 1.0, RootSide::upper, 1e-12);
  CHECK(upper.root == doctest::Approx(kCubicUpper).epsilon(1e-12));
  const TrinomialRoot lower = solve_trinomial_root(tri, 1.0, RootSide::lower, 1e-12);
  CHECK(lower.root == doctest::Approx(kCubicLower).epsilon(1e-12));

  // Starting at the root itself is a fixed point.
  const TrinomialRoot fixed =
      solve_trinomial_root(tri, upper.root, RootSide::upper, 1e-12);
  CHECK(fixed.iterations == 1);
  CHECK(fixed.root == doctest::Approx(upper.root).epsilon(1e-13));

  CHECK_THROWS_AS(solve_trinomial_root(tri, 0.01, RootSide::lower, 1e-12),
                  std::invalid_argument);  // f(0.01) > 0
}

TEST_CASE("annulus radii for the running example match bisection") {
  const PelletInstance inst = example_q_instance();
  const Detection det = detect(inst);
  REQUIRE(det.exists == Existence::yes);
  const AnnulusResult res = pellet_annulus(inst, det.x_star, 1e-12);
  REQUIRE(res.converged);
  CHECK(res.k == 3);
  CHECK(res.zero_count == 3);
  CHECK(res.r < res.R);

  const auto [r_ref, R_ref] = bisect_phi_roots(inst, det.x_star);
  CHECK(res.r == doctest::Approx(r_ref).epsilon(1e-10));
  CHECK(res.R == doctest::Approx(R_ref).epsilon(1e-10));

  // Plausible effort, in line with quadratic convergence.
  CHECK(res.inner_counts_R.size() <= 12);
  CHECK(res.inner_counts_r.size() <= 12);
  for (std::size_t i = 2; i < res.inner_counts_R.size(); ++i) {
    CHECK(res.inner_counts_R[i] <= res.inner_counts_R[i - 1]);
  }
  for (std::size_t i = 2; i < res.inner_counts_r.size(); ++i) {
    CHECK(res.inner_counts_r[i] <= res.inner_counts_r[i - 1]);
  }
}

TEST_CASE("annulus iterates are monotone bounds") {
  const PelletInstance inst = example_q_instance();
  const Detection det = detect(inst);
  const AnnulusResult res = pellet_annulus(inst, det.x_star, 1e-12);
  REQUIRE(res.converged);
  for (std::size_t i = 1; i < res.iterates_R.size(); ++i) {
    CHECK(res.iterates_R[i] >= res.iterates_R[i - 1]);
  }
  for (std::size_t i = 1; i < res.iterates_r.size(); ++i) {
    CHECK(res.iterates_r[i] <= res.iterates_r[i - 1]);
  }
  for (double x : res.iterates_R) {
    CHECK(eval_phi(inst, x).value <= 1e-10 * std::max(1.0, naive_phi_scale(inst, x)));
  }
  for (double x : res.iterates_r) {
    CHECK(eval_phi(inst, x).value <= 1e-10 * std::max(1.0, naive_phi_scale(inst, x)));
  }
}

TEST_CASE("annulus on a trinomial instance lands in one outer step") {
  // Here f == phi, so the first fit already solves the problem; the second
  // fit only confirms convergence.
  const PelletInstance inst = cubic_instance();
  const Detection det = detect(inst);
  REQUIRE(det.exists == Existence::yes);
  const AnnulusResult res = pellet_annulus(inst, det.x_star, 1e-12);
  REQUIRE(res.converged);
  CHECK(std::abs(res.iterates_R[1] - res.R) <= 1e-12 * res.R);
  CHECK(std::abs(res.iterates_r[1] - res.r) <= 1e-12 * std::max(1.0, res.r));
  CHECK(res.inner_counts_R.size() <= 2);
  CHECK(res.inner_counts_r.size() <= 2);
  CHECK(res.R == doctest::Approx(kCubicUpper).epsilon(1e-12));
  CHECK(res.r == doctest::Approx(kCubicLower).epsilon(1e-12));
}

TEST_CASE("annulus rejects invalid starting points") {
  const PelletInstance inst = example_q_instance();
  CHECK_THROWS_AS(pellet_annulus(inst, 0.1, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(pellet_annulus(inst, -0.5, 1e-12), std::invalid_argument);
}

TEST_CASE("random instances: sandwich against bisection, modest outer effort") {
  std::mt19937_64 rng(98765);
  int separable = 0;
  int trial = 0;
  while (separable < 40 && trial < 4000) {
    ++trial;
    std::uniform_int_distribution<int> deg(3, 50);
    const int n = deg(rng);
    std::uniform_int_distribution<int> pick_k(1, n - 1);
    const int k = pick_k(rng);
    std::vector<double> eta = pellet::testing::random_eta(rng, n, -1.5, 1.5);
    const PelletInstance probe = make_instance(eta, k);
    const Detection base = detect(probe);
    // Plant a comfortable margin so convergence speed is representative.
    eta[static_cast<std::size_t>(k)] = base.threshold * 1.25;
    const PelletInstance inst = make_instance(eta, k);
    const Detection det = detect(inst);
    REQUIRE(det.exists == Existence::yes);
    ++separable;

    const AnnulusResult res = pellet_annulus(inst, det.x_star, 1e-12);
    REQUIRE(res.converged);
    CHECK(res.inner_counts_R.size() <= 25);
    CHECK(res.inner_counts_r.size() <= 25);

    const auto [r_ref, R_ref] = bisect_phi_roots(inst, det.x_star);
    for (double x : res.iterates_r) {
      CHECK(x >= r_ref * (1.0 - 1e-9));
      CHECK(x <= R_ref * (1.0 + 1e-9));
    }
    for (double x : res.iterates_R) {
      CHECK(x >= r_ref * (1.0 - 1e-9));
      CHECK(x <= R_ref * (1.0 + 1e-9));
    }
    CHECK(res.r == doctest::Approx(r_ref).epsilon(1e-9));
    CHECK(res.R == doctest::Approx(R_ref).epsilon(1e-9));
  }
  CHECK(separable == 40);
}
