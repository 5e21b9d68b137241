// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <utility>
#include <vector>

#include "pellet/matrix_pellet.hpp"
#include "pellet/polynomial.hpp"

// Certification machinery. Nothing here is part of the Pellet method
// itself: these routines verify its zero-count claims independently, for
// the test suites and the CLI --verify flag.

namespace pellet {

struct RootSet {
  std::vector<Complex> roots;  // all complex roots, with multiplicity
  double residual = 0.0;       // max |p(root)| / (|a_n| max(1, B)^n), B = Cauchy bound
  bool converged = false;
  int sweeps = 0;
};

/// All complex roots by Aberth-Ehrlich simultaneous iteration, started on a
/// circle of Cauchy-bound radius at distinct angles. Non-convergence is
/// reported through the flags, never silently.
RootSet all_roots(const Polynomial& p, double tol = 1e-13, int max_sweeps = 500);

/// Reference (r, R) by plain bisection on phi, bracketing from a seed with
/// phi(seed) < 0: r in [0, seed] and R in [seed, B] where B bounds phi's
/// largest root through its one-sign-change envelope. Throws
/// std::invalid_argument when no bracket exists.
std::pair<double, double> reference_radii(const PelletInstance& inst, double x_seed,
                                          double tol = kDefaultTol);

/// Number of roots with |z| <= radius * (1 + slack) ("in or on" the circle).
int count_in_disk(const RootSet& roots, double radius, double slack);

/// det P(z) expanded as a scalar polynomial by cofactor expansion over the
/// polynomial entries. Desk-scale only (m <= 8); the roots of the result are
/// the finite eigenvalues of P.
Polynomial determinant_polynomial(const MatrixPolynomial& P);

}  // namespace pellet
