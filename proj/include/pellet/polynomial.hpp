// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

namespace pellet {

using Complex = std::complex<double>;

/// Default relative tolerance used by the iterative solvers.
inline constexpr double kDefaultTol = 1e-12;

/// Dense complex polynomial a_0 + a_1 z + ... + a_n z^n.
///
/// Coefficients are stored in ascending degree; the leading coefficient is
/// nonzero. Instances are immutable by convention once constructed through
/// make_polynomial().
struct Polynomial {
  std::vector<Complex> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

struct ComplexEval {
  Complex value{0.0, 0.0};
  Complex derivative{0.0, 0.0};
};

/// Validates and wraps a coefficient vector (ascending degree).
/// Throws std::invalid_argument if the vector is empty or the leading
/// coefficient is zero.
Polynomial make_polynomial(std::vector<Complex> coefficients);

/// Fused Horner evaluation of p and p' at z.
ComplexEval eval(const Polynomial& p, Complex z);

/// Coefficient data of the auxiliary real polynomial
///
///   phi(x) = x^n + eta_{n-1} x^{n-1} + ... - eta_k x^k + ... + eta_1 x + eta_0
///
/// for a distinguished index k. Only the nonnegative magnitudes eta_j are
/// stored (dense, eta_n == 1 after normalization); the sign flip at k is
/// applied during evaluation. Pellet's theorem separates the zeros of the
/// originating polynomial into k inside |z| <= r and n-k outside |z| >= R
/// whenever phi has two positive roots r < R.
struct PelletInstance {
  std::vector<double> eta;  // eta[j] >= 0, eta[0] > 0, eta[k] > 0, eta[n] == 1
  int k = 0;

  int degree() const { return static_cast<int>(eta.size()) - 1; }
};

/// Builds an instance from raw magnitudes. The vector is normalized by its
/// last entry so that phi is monic; this leaves the positive roots unchanged.
/// Requires size >= 3, eta_j >= 0, eta_0 > 0, eta_k > 0, eta_n > 0 and
/// 1 <= k <= n-1.
PelletInstance make_instance(std::vector<double> eta, int k);

/// Builds the instance for p and index k, eta_j = |a_j| / |a_n|.
/// Requires degree >= 3, 1 <= k <= degree-1, a_0 != 0 and a_k != 0.
PelletInstance pellet_instance(const Polynomial& p, int k);

struct PhiEval {
  double value = 0.0;
  double derivative = 0.0;
};

struct PhiSplitEval {
  double phi1 = 0.0;
  double dphi1 = 0.0;
  double phi2 = 0.0;
  double dphi2 = 0.0;
};

/// phi and phi' at x >= 0, one fused Horner pass.
PhiEval eval_phi(const PelletInstance& inst, double x);

/// The split phi = phi1 + phi2, where phi1 collects the degrees above k and
/// phi2 the degrees k and below (phi2 carries the negated k-th term).
PhiSplitEval eval_phi_split(const PelletInstance& inst, double x);

/// sum_j eta_j x^j -- the natural magnitude scale of phi near x, used for
/// relative rounding bands.
double phi_scale(const PelletInstance& inst, double x);

namespace detail {
/// Forward-error allowance for a Horner pass of phi at x.
double phi_rounding_slack(const PelletInstance& inst, double x);
}  // namespace detail

}  // namespace pellet
