// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pellet/matrix_pellet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "pellet/errors.hpp"

namespace pellet {

Matrix Matrix::identity(int dim) {
  Matrix out(dim);
  for (int i = 0; i < dim; ++i) out(i, i) = Complex(1.0, 0.0);
  return out;
}

bool Matrix::is_zero() const {
  for (const Complex& v : data) {
    if (v != Complex(0.0, 0.0)) return false;
  }
  return true;
}

namespace {

double max_column_abs_sum(const Matrix& a) {
  double best = 0.0;
  for (int j = 0; j < a.m; ++j) {
    double sum = 0.0;
    for (int i = 0; i < a.m; ++i) sum += std::abs(a(i, j));
    best = std::max(best, sum);
  }
  return best;
}

double max_row_abs_sum(const Matrix& a) {
  double best = 0.0;
  for (int i = 0; i < a.m; ++i) {
    double sum = 0.0;
    for (int j = 0; j < a.m; ++j) sum += std::abs(a(i, j));
    best = std::max(best, sum);
  }
  return best;
}

Matrix conj_transpose_times_self(const Matrix& a) {
  Matrix h(a.m);
  for (int i = 0; i < a.m; ++i) {
    for (int j = 0; j < a.m; ++j) {
      Complex sum{0.0, 0.0};
      for (int l = 0; l < a.m; ++l) {
        sum += std::conj(a(l, i)) * a(l, j);
      }
      h(i, j) = sum;
    }
  }
  return h;
}

double vec_norm(const std::vector<Complex>& v) {
  double sum = 0.0;
  for (const Complex& x : v) sum += std::norm(x);
  return std::sqrt(sum);
}

std::vector<Complex> mat_vec(const Matrix& a, const std::vector<Complex>& v) {
  std::vector<Complex> out(static_cast<std::size_t>(a.m));
  for (int i = 0; i < a.m; ++i) {
    Complex sum{0.0, 0.0};
    for (int j = 0; j < a.m; ++j) sum += a(i, j) * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = sum;
  }
  return out;
}

constexpr double kPowerIterTol = 1e-10;
constexpr int kPowerIterCap = 25000;

double largest_eigenvalue_psd(const Matrix& h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Complex> v(static_cast<std::size_t>(h.m));
  for (Complex& x : v) x = Complex(unit(rng), unit(rng));
  const double nv = vec_norm(v);
  for (Complex& x : v) x /= nv;
  double lambda = 0.0;
  for (int it = 0; it < kPowerIterCap; ++it) {
    std::vector<Complex> w = mat_vec(h, v);
    const double nw = vec_norm(w);
    if (nw == 0.0) return 0.0;  // v is in the null space: restartable
    const double next = nw;     // ||Hv|| -> lambda_max for unit v
    for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] / nw;
    if (it >= 2 && std::abs(next - lambda) <= kPowerIterTol * next) {
      return next;
    }
    lambda = next;
  }
  return -lambda;  // negative flags stagnation to the caller
}

double two_norm(const Matrix& a) {
  if (a.is_zero()) return 0.0;
  const Matrix h = conj_transpose_times_self(a);
  double lambda = largest_eigenvalue_psd(h, 0x5eedbeefULL);
  if (lambda <= 0.0) {
    // One restart on stagnation, then take the better of the two runs.
    const double retry = largest_eigenvalue_psd(h, 0xabad1deaULL);
    lambda = std::max(std::abs(lambda), std::abs(retry));
  }
  return std::sqrt(lambda);
}

}  // namespace

double induced_norm(const Matrix& a, NormKind kind) {
  if (a.m <= 0) {
    throw std::invalid_argument("induced_norm: empty matrix");
  }
  switch (kind) {
    case NormKind::one:
      return max_column_abs_sum(a);
    case NormKind::infinity:
      return max_row_abs_sum(a);
    case NormKind::two:
      return two_norm(a);
  }
  throw std::invalid_argument("induced_norm: unknown norm kind");
}

LuFactors lu_factorize(const Matrix& a) {
  const int m = a.m;
  LuFactors f{a, std::vector<int>(static_cast<std::size_t>(m))};
  for (int i = 0; i < m; ++i) f.perm[static_cast<std::size_t>(i)] = i;
  const double pivot_floor =
      m * std::numeric_limits<double>::epsilon() * max_row_abs_sum(a);
  Matrix& lu = f.lu;
  for (int col = 0; col < m; ++col) {
    int pivot_row = col;
    double pivot_mag = std::abs(lu(col, col));
    for (int i = col + 1; i < m; ++i) {
      const double mag = std::abs(lu(i, col));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = i;
      }
    }
    if (pivot_mag <= pivot_floor) {
      throw SingularMatrixError("matrix is singular to working precision");
    }
    if (pivot_row != col) {
      for (int j = 0; j < m; ++j) std::swap(lu(col, j), lu(pivot_row, j));
      std::swap(f.perm[static_cast<std::size_t>(col)],
                f.perm[static_cast<std::size_t>(pivot_row)]);
    }
    const Complex pivot = lu(col, col);
    for (int i = col + 1; i < m; ++i) {
      const Complex factor = lu(i, col) / pivot;
      lu(i, col) = factor;
      for (int j = col + 1; j < m; ++j) {
        lu(i, j) -= factor * lu(col, j);
      }
    }
  }
  return f;
}

Matrix lu_solve(const LuFactors& f, const Matrix& rhs) {
  const int m = f.lu.m;
  if (rhs.m != m) {
    throw std::invalid_argument("lu_solve: dimension mismatch");
  }
  Matrix x(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      x(i, j) = rhs(f.perm[static_cast<std::size_t>(i)], j);
    }
  }
  for (int col = 0; col < m; ++col) {
    for (int i = 1; i < m; ++i) {  // forward: L has unit diagonal
      for (int j = 0; j < i; ++j) {
        x(i, col) -= f.lu(i, j) * x(j, col);
      }
    }
    for (int i = m - 1; i >= 0; --i) {  // backward
      for (int j = i + 1; j < m; ++j) {
        x(i, col) -= f.lu(i, j) * x(j, col);
      }
      x(i, col) /= f.lu(i, i);
    }
  }
  return x;
}

Matrix inverse(const Matrix& a) {
  return lu_solve(lu_factorize(a), Matrix::identity(a.m));
}

double inverse_norm_reciprocal(const Matrix& a, NormKind kind) {
  return 1.0 / induced_norm(inverse(a), kind);
}

MatrixPolynomial make_matrix_polynomial(std::vector<Matrix> matrices) {
  if (matrices.size() < 3) {
    throw std::invalid_argument("matrix polynomial: need degree >= 2");
  }
  const int m = matrices.front().m;
  if (m <= 0) {
    throw std::invalid_argument("matrix polynomial: empty coefficient matrices");
  }
  for (const Matrix& a : matrices) {
    if (a.m != m || a.data.size() != static_cast<std::size_t>(m) * m) {
      throw std::invalid_argument("matrix polynomial: inconsistent dimensions");
    }
  }
  if (matrices.front().is_zero()) {
    throw std::invalid_argument("matrix polynomial: A_0 must be nonzero");
  }
  if (matrices.back().is_zero()) {
    throw std::invalid_argument("matrix polynomial: A_n must be nonzero");
  }
  return MatrixPolynomial{m, std::move(matrices)};
}

PelletInstance matrix_pellet_instance(const MatrixPolynomial& P, int k, NormKind kind) {
  const int n = P.degree();
  if (k < 1 || k > n - 1) {
    throw std::invalid_argument("matrix instance: k must satisfy 1 <= k <= n-1");
  }
  std::vector<double> eta(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    if (j == k) continue;
    eta[static_cast<std::size_t>(j)] = induced_norm(P.matrices[static_cast<std::size_t>(j)], kind);
  }
  eta[static_cast<std::size_t>(k)] =
      inverse_norm_reciprocal(P.matrices[static_cast<std::size_t>(k)], kind);
  // make_instance divides by eta_n = ||A_n||, so the stored phi is monic.
  return make_instance(std::move(eta), k);
}

Detection matrix_detect(const MatrixPolynomial& P, int k, NormKind kind, double tol) {
  const PelletInstance inst = matrix_pellet_instance(P, k, kind);
  Detection det = detect(inst, tol);
  if (kind == NormKind::two && det.exists != Existence::indeterminate) {
    // The power iteration resolves norms to ~1e-10 relative; a verdict
    // closer to the threshold than that is not trustworthy.
    const double eta_k = inst.eta[static_cast<std::size_t>(k)];
    if (std::abs(det.margin) <= 1e-10 * std::max(det.threshold, eta_k)) {
      det.exists = Existence::indeterminate;
    }
  }
  return det;
}

AnnulusResult matrix_annulus(const MatrixPolynomial& P, int k, NormKind kind, double tol) {
  const Detection det = matrix_detect(P, k, kind, tol);
  if (det.exists != Existence::yes) {
    throw std::invalid_argument(
        "matrix_annulus: detection did not certify two positive roots");
  }
  const PelletInstance inst = matrix_pellet_instance(P, k, kind);
  AnnulusResult out;
  if (P.degree() == 2) {
    // phi(x) = x^2 - eta_1 x + eta_0 here; solve it in closed form. The
    // larger root first, its partner via the product, so neither cancels.
    const double eta1 = inst.eta[1];
    const double eta0 = inst.eta[0];
    const double disc = eta1 * eta1 - 4.0 * eta0;  // > 0 when margin > 0
    const double big = 0.5 * (eta1 + std::sqrt(disc));
    out.k = k;
    out.R = big;
    out.r = eta0 / big;
    out.iterates_R = {det.x_star, out.R};
    out.iterates_r = {det.x_star, out.r};
    out.converged = true;
  } else {
    out = pellet_annulus(inst, det.x_star, tol);
  }
  out.zero_count = static_cast<std::int64_t>(k) * P.m;
  return out;
}

}  // namespace pellet
