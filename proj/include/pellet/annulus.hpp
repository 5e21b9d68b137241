// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pellet/polynomial.hpp"

namespace pellet {

/// The dominating trinomial f(x) = alpha x^n - beta x^k + gamma, tangent to
/// phi at the fit point and satisfying f(x) >= phi(x) for all x >= 0. Its
/// positive roots therefore lie inside [r, R].
struct Trinomial {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  int n = 0;
  int k = 0;
  double fit_point = 0.0;
};

/// The hyperbolic surrogate h(x) = alpha*delta / (epsilon - x^k) - beta x^k
/// + gamma, tangent to its parent trinomial at the fit point and dominating
/// it below the pole at x^k = epsilon. Its zeros solve a quadratic in x^k.
struct Surrogate {
  double delta = 0.0;
  double epsilon = 0.0;
  Trinomial parent;
  double fit_point = 0.0;
};

enum class RootSide { lower, upper };

struct TrinomialRoot {
  double root = 0.0;
  int iterations = 0;
};

/// Deliverable of the annulus computation: p (or the matrix polynomial P)
/// has exactly zero_count zeros with |z| <= r and none in r < |z| < R.
/// Every recorded iterate is itself a valid bound, so a truncated run still
/// yields a correct upper bound on r and lower bound on R.
struct AnnulusResult {
  int k = 0;
  double r = 0.0;
  double R = 0.0;
  std::vector<int> inner_counts_r;
  std::vector<int> inner_counts_R;
  std::vector<double> iterates_r;  // nonincreasing, starts at the seed
  std::vector<double> iterates_R;  // nondecreasing, starts at the seed
  bool converged = false;
  std::int64_t zero_count = 0;
};

/// First-order fit of the trinomial majorant at x_bar:
///   alpha = phi1'(x_bar) x_bar^{1-n} / n,
///   beta  = -phi2'(x_bar) x_bar^{1-k} / k,
///   gamma = phi(x_bar) - x_bar (phi1'(x_bar)/n + phi2'(x_bar)/k).
/// Requires phi(x_bar) <= 0 (up to rounding slack); throws
/// std::invalid_argument otherwise.
Trinomial fit_trinomial(const PelletInstance& inst, double x_bar);

double eval_trinomial(const Trinomial& tri, double x);

/// delta = (k/n) x_bar^{k+n}, epsilon = ((n+k)/n) x_bar^k. Requires
/// f(x_bar) <= 0 (up to rounding slack).
Surrogate fit_surrogate(const Trinomial& tri, double x_bar);

/// h(x); +inf magnitude near the pole. Defined for x^k != epsilon.
double eval_surrogate(const Surrogate& sur, double x);

/// x-coordinate of the surrogate's pole, epsilon^{1/k}.
double surrogate_pole(const Surrogate& sur);

/// Solves beta y^2 - (epsilon beta + gamma) y + (alpha delta + epsilon gamma)
/// = 0 for y = x^k with the cancellation-stable quadratic formula, keeping
/// the branch below the pole, and returns (s1, s2) = (y_small^{1/k},
/// y_large^{1/k}). They satisfy r1 <= s1 <= x_bar <= s2 <= r2 for the parent
/// roots r1 < r2.
std::pair<double, double> surrogate_roots(const Surrogate& sur);

/// Fixed-point iteration x <- s_side(fit_surrogate(tri, x)) from x_start,
/// monotone toward the requested root of the trinomial. Stops when the
/// relative step is <= tol; throws ConvergenceError past max_iter.
TrinomialRoot solve_trinomial_root(const Trinomial& tri, double x_start, RootSide side,
                                   double tol, int max_iter = 100);

/// Computes both positive roots of phi from a starting point x_star inside
/// them (phi(x_star) < 0): each outer step fits the trinomial majorant at
/// the current iterate and moves to its root on the requested side, warm
/// starting the inner surrogate solve at the current iterate. The r-sequence
/// decreases and the R-sequence increases, both within [r, R] throughout.
/// Iteration-cap overruns are reported through AnnulusResult::converged;
/// the partial iterates remain correct bounds.
AnnulusResult pellet_annulus(const PelletInstance& inst, double x_star,
                             double tol = kDefaultTol, int max_outer = 100);

}  // namespace pellet
