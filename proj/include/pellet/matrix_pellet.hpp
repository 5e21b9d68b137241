// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "pellet/annulus.hpp"
#include "pellet/detection.hpp"
#include "pellet/polynomial.hpp"

namespace pellet {

/// Small dense complex matrix, row-major.
struct Matrix {
  int m = 0;
  std::vector<Complex> data;

  Matrix() = default;
  explicit Matrix(int dim) : m(dim), data(static_cast<std::size_t>(dim) * dim) {}

  Complex& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * m + j]; }
  const Complex& operator()(int i, int j) const {
    return data[static_cast<std::size_t>(i) * m + j];
  }

  static Matrix identity(int dim);
  bool is_zero() const;
};

/// Vector-induced operator norms. one/infinity are the exact column/row
/// absolute sums; two is the largest singular value, computed by power
/// iteration on A^H A to relative tolerance 1e-10.
enum class NormKind { one, infinity, two };

double induced_norm(const Matrix& a, NormKind kind);

/// Compact LU factorization with partial pivoting: perm[i] gives the source
/// row of row i of LU.
struct LuFactors {
  Matrix lu;
  std::vector<int> perm;
};

/// Throws SingularMatrixError when a pivot is at or below m * ulp * ||A||.
LuFactors lu_factorize(const Matrix& a);

Matrix lu_solve(const LuFactors& f, const Matrix& rhs);

/// Explicit inverse via the LU factorization; m is small in desk use.
Matrix inverse(const Matrix& a);

/// 1 / ||A^{-1}|| in the requested norm. Throws SingularMatrixError if A is
/// singular to working precision.
double inverse_norm_reciprocal(const Matrix& a, NormKind kind);

/// P(z) = A_n z^n + ... + A_1 z + A_0 with square m x m coefficients.
struct MatrixPolynomial {
  int m = 0;
  std::vector<Matrix> matrices;  // ascending degree

  int degree() const { return static_cast<int>(matrices.size()) - 1; }
};

/// Validates dimensions and the nonzero ends; requires degree >= 2.
MatrixPolynomial make_matrix_polynomial(std::vector<Matrix> matrices);

/// Instance with eta_j = ||A_j|| / ||A_n|| except eta_k =
/// ||A_k^{-1}||^{-1} / ||A_n||. The scalar detection and root machinery
/// applies unchanged; only the zero-count semantics change to k*m.
PelletInstance matrix_pellet_instance(const MatrixPolynomial& P, int k, NormKind kind);

/// detect() on the derived instance. For the two-norm the verdict is demoted
/// to indeterminate when the margin is within the power-iteration tolerance
/// of the threshold.
Detection matrix_detect(const MatrixPolynomial& P, int k, NormKind kind,
                        double tol = kDefaultTol);

/// Annulus radii for the matrix polynomial: P has exactly k*m eigenvalues in
/// or on |z| = r and none in r < |z| < R. Degree 2 (where phi is itself a
/// quadratic trinomial) is solved in closed form. Throws
/// std::invalid_argument unless detection certifies two roots.
AnnulusResult matrix_annulus(const MatrixPolynomial& P, int k, NormKind kind,
                             double tol = kDefaultTol);

}  // namespace pellet
