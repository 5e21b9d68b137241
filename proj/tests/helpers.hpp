// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "pellet/polynomial.hpp"

namespace pellet::testing {

// Independent reference evaluation: plain power sums via std::pow, no shared
// code with the Horner paths under test.
inline double naive_phi(const PelletInstance& inst, double x) {
  double sum = 0.0;
  for (int j = 0; j <= inst.degree(); ++j) {
    const double c = (j == inst.k) ? -inst.eta[static_cast<std::size_t>(j)]
                                   : inst.eta[static_cast<std::size_t>(j)];
    sum += c * std::pow(x, j);
  }
  return sum;
}

inline double naive_phi_scale(const PelletInstance& inst, double x) {
  double sum = 0.0;
  for (int j = 0; j <= inst.degree(); ++j) {
    sum += inst.eta[static_cast<std::size_t>(j)] * std::pow(x, j);
  }
  return sum;
}

// Bisection to high relative accuracy; requires a sign change on [lo, hi].
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-14) {
  double flo = f(lo);
  for (int it = 0; it < 2000 && (hi - lo) > tol * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Central difference with cube-root-of-ulp step scaling.
inline double central_difference(const std::function<double(double)>& f, double x) {
  const double h = std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::abs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Coefficients with log-uniform magnitudes over [10^lo, 10^hi] and uniform
// phases; the leading coefficient is forced real positive for convenience.
inline std::vector<Complex> random_coefficients(std::mt19937_64& rng, int degree,
                                                double lo = -4.0, double hi = 4.0) {
  std::uniform_real_distribution<double> exponent(lo, hi);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.141592653589793);
  std::vector<Complex> coeffs(static_cast<std::size_t>(degree) + 1);
  for (int j = 0; j < degree; ++j) {
    coeffs[static_cast<std::size_t>(j)] =
        std::polar(std::pow(10.0, exponent(rng)), phase(rng));
  }
  coeffs.back() = Complex(std::pow(10.0, exponent(rng)), 0.0);
  return coeffs;
}

inline std::vector<double> random_eta(std::mt19937_64& rng, int degree, double lo = -2.0,
                                      double hi = 2.0) {
  std::uniform_real_distribution<double> exponent(lo, hi);
  std::vector<double> eta(static_cast<std::size_t>(degree) + 1);
  for (double& v : eta) v = std::pow(10.0, exponent(rng));
  eta.back() = 1.0;
  return eta;
}

}  // namespace pellet::testing
