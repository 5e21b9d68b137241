// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "pellet/polynomial.hpp"

namespace pellet {

/// The polynomial chi(x) = sum_j (j - k) eta_j x^j, whose unique positive
/// root x* minimizes x^{-k} phi(x). Its coefficient sequence has exactly one
/// sign change (positive block above k, negative block below, zero at k),
/// and it does not depend on eta_k.
struct ChiPolynomial {
  std::vector<double> coefficients;  // signed, ascending degree; [k] == 0
  int k = 0;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

ChiPolynomial build_chi(const PelletInstance& inst);

/// chi and chi' at x, one fused Horner pass.
PhiEval eval_chi(const ChiPolynomial& chi, double x);

/// An upper bound B >= x* computed from the one-sign-change shape: with m the
/// lowest index of the positive block and l the highest index of the negative
/// block, B = (S-/S+)^{1/(m-l)} when chi(1) < 0 and B = (S-/S+)^{1/n} when
/// chi(1) > 0, where S+/S- are the positive/negative coefficient mass.
/// Returns exactly 1 when chi(1) == 0.
double positive_root_upper_bound(const ChiPolynomial& chi);

struct ChiRoot {
  double x_star = 0.0;
  int steps = 0;
  bool converged = false;
  double bracket_lo = 0.0;  // last point with chi < 0
  double bracket_hi = 0.0;  // last point with chi >= 0
  std::vector<double> iterates;
};

/// Safeguarded Newton for the positive root of chi, started at the upper
/// bound. Iterates approach x* monotonically from the right; an iterate that
/// falls below the root (chi < 0) only tightens the bracket and triggers a
/// bisection step. Stops when the relative step is <= tol; gives up after
/// max_steps without throwing (see ChiRoot::converged).
ChiRoot solve_chi_root(const ChiPolynomial& chi, double tol, int max_steps = 200);

/// sigma(x*) / (x*)^k, where sigma is phi with the k-th term removed. This is
/// the least value of eta_k (exclusive) for which phi dips below zero.
double separation_threshold(const PelletInstance& inst, double x_star);

/// Upper bound on phi's largest positive root, from the one-sign-change
/// envelope that keeps only the degrees above k and the negated k-th term.
double phi_root_upper_bound(const PelletInstance& inst);

enum class Existence { yes, no, indeterminate };

struct Detection {
  Existence exists = Existence::indeterminate;
  double x_star = 0.0;
  double phi_at_x_star = 0.0;
  double threshold = 0.0;  // sigma(x*) / (x*)^k
  double margin = 0.0;     // eta_k - threshold
  int chi_newton_steps = 0;
};

/// Decides whether phi has two positive roots: yes iff phi(x*) < 0. A
/// tolerance band of width tol * max(1, threshold) * (x*)^k around zero
/// yields the indeterminate verdict; a near-double root cannot be certified
/// in double precision. When the verdict is yes, x* lies strictly between
/// the two roots and is the canonical starting point for computing them.
/// Throws ConvergenceError if the x* solve does not converge.
Detection detect(const PelletInstance& inst, double tol = kDefaultTol);

namespace detail {
/// Root bound for any coefficient vector with the one-sign-change shape
/// (all strictly negative coefficients at indices below all strictly
/// positive ones). Shared by chi and by the envelope bound used for phi.
double one_sign_change_root_bound(const std::vector<double>& coefficients);
}  // namespace detail

}  // namespace pellet
