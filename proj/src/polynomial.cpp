// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pellet/polynomial.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pellet {

Polynomial make_polynomial(std::vector<Complex> coefficients) {
  if (coefficients.empty()) {
    throw std::invalid_argument("polynomial: empty coefficient vector");
  }
  if (coefficients.back() == Complex(0.0, 0.0)) {
    throw std::invalid_argument("polynomial: zero leading coefficient");
  }
  return Polynomial{std::move(coefficients)};
}

ComplexEval eval(const Polynomial& p, Complex z) {
  Complex v{0.0, 0.0};
  Complex d{0.0, 0.0};
  for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  return {v, d};
}

PelletInstance make_instance(std::vector<double> eta, int k) {
  const int n = static_cast<int>(eta.size()) - 1;
  if (n < 2) {
    throw std::invalid_argument("instance: need degree >= 2");
  }
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("instance: k must satisfy 1 <= k <= n-1");
  }
  for (double v : eta) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("instance: coefficients must be nonnegative");
    }
  }
  if (!(eta.back() > 0.0)) {
    throw std::invalid_argument("instance: zero leading coefficient");
  }
  if (!(eta.front() > 0.0)) {
    throw std::invalid_argument("instance: zero constant term");
  }
  if (!(eta[static_cast<std::size_t>(k)] > 0.0)) {
    throw std::invalid_argument("instance: zero coefficient at the split index");
  }
  if (eta.back() != 1.0) {
    const double lead = eta.back();
    for (double& v : eta) v /= lead;
    eta.back() = 1.0;
  }
  return PelletInstance{std::move(eta), k};
}

PelletInstance pellet_instance(const Polynomial& p, int k) {
  const int n = p.degree();
  if (n < 3) {
    throw std::invalid_argument("instance: scalar separation needs degree >= 3");
  }
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("instance: k must satisfy 1 <= k <= n-1");
  }
  if (p.coefficients.front() == Complex(0.0, 0.0)) {
    throw std::invalid_argument("instance: a_0 must be nonzero");
  }
  if (p.coefficients[static_cast<std::size_t>(k)] == Complex(0.0, 0.0)) {
    throw std::invalid_argument("instance: a_k must be nonzero");
  }
  // std::abs on complex is hypot-based, safe against spurious overflow.
  std::vector<double> eta(p.coefficients.size());
  for (std::size_t j = 0; j < p.coefficients.size(); ++j) {
    eta[j] = std::abs(p.coefficients[j]);
  }
  return make_instance(std::move(eta), k);
}

PhiEval eval_phi(const PelletInstance& inst, double x) {
  if (!(x >= 0.0)) {
    throw std::invalid_argument("eval_phi: x must be nonnegative");
  }
  double v = 0.0;
  double d = 0.0;
  for (int j = inst.degree(); j >= 0; --j) {
    const double c = (j == inst.k) ? -inst.eta[static_cast<std::size_t>(j)]
                                   : inst.eta[static_cast<std::size_t>(j)];
    d = d * x + v;
    v = v * x + c;
  }
  return {v, d};
}

PhiSplitEval eval_phi_split(const PelletInstance& inst, double x) {
  if (!(x >= 0.0)) {
    throw std::invalid_argument("eval_phi_split: x must be nonnegative");
  }
  const int n = inst.degree();
  const int k = inst.k;
  PhiSplitEval out;
  // phi1: degrees k+1..n. Run Horner down to k+1, then push the remaining
  // k+1 powers of x through (coefficients there are zero).
  double v = 0.0, d = 0.0;
  for (int j = n; j > k; --j) {
    d = d * x + v;
    v = v * x + inst.eta[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j <= k; ++j) {
    d = d * x + v;
    v = v * x;
  }
  out.phi1 = v;
  out.dphi1 = d;
  // phi2: degrees 0..k, negated at k.
  v = 0.0;
  d = 0.0;
  for (int j = k; j >= 0; --j) {
    const double c = (j == k) ? -inst.eta[static_cast<std::size_t>(j)]
                              : inst.eta[static_cast<std::size_t>(j)];
    d = d * x + v;
    v = v * x + c;
  }
  out.phi2 = v;
  out.dphi2 = d;
  return out;
}

double phi_scale(const PelletInstance& inst, double x) {
  double v = 0.0;
  for (int j = inst.degree(); j >= 0; --j) {
    v = v * x + inst.eta[static_cast<std::size_t>(j)];
  }
  return v;
}

namespace detail {

double phi_rounding_slack(const PelletInstance& inst, double x) {
  const double u = std::numeric_limits<double>::epsilon();
  return (4.0 * inst.degree() + 16.0) * u * phi_scale(inst, x);
}

}  // namespace detail

}  // namespace pellet
