// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pellet/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pellet/detection.hpp"

namespace pellet {

namespace {

double cauchy_bound(const Polynomial& p) {
  const double lead = std::abs(p.coefficients.back());
  double best = 0.0;
  for (std::size_t j = 0; j + 1 < p.coefficients.size(); ++j) {
    best = std::max(best, std::abs(p.coefficients[j]) / lead);
  }
  return 1.0 + best;
}

}  // namespace

namespace {

// Magnitude of a full rounding-level evaluation of p at |z|; once |p(z)| is
// below a small multiple of eps times this, the point is a root to working
// precision (this is what lets clusters and multiple roots settle).
double eval_magnitude(const Polynomial& p, double mag) {
  double v = 0.0;
  for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
    v = v * mag + std::abs(*it);
  }
  return v;
}

}  // namespace

RootSet all_roots(const Polynomial& p, double tol, int max_sweeps) {
  const int n = p.degree();
  if (n < 1) {
    throw std::invalid_argument("all_roots: need degree >= 1");
  }
  RootSet out;
  out.roots.resize(static_cast<std::size_t>(n));
  const double radius = cauchy_bound(p);
  for (int i = 0; i < n; ++i) {
    const double angle = 2.0 * std::numbers::pi * i / n + 0.7;
    out.roots[static_cast<std::size_t>(i)] = std::polar(radius, angle);
  }
  const double backward_floor = 8.0 * n * std::numeric_limits<double>::epsilon();
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    bool all_settled = true;
    for (int i = 0; i < n; ++i) {
      Complex& z = out.roots[static_cast<std::size_t>(i)];
      ComplexEval e = eval(p, z);
      if (std::abs(e.value) <= backward_floor * eval_magnitude(p, std::abs(z))) {
        continue;  // a root to working precision; leave it in place
      }
      if (e.derivative == Complex(0.0, 0.0)) {
        z *= Complex(1.0 + 1e-8, 1e-8);  // nudge off a critical point
        e = eval(p, z);
        if (e.derivative == Complex(0.0, 0.0)) {
          all_settled = false;
          continue;
        }
      }
      const Complex newton = e.value / e.derivative;
      Complex repulsion{0.0, 0.0};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex diff = z - out.roots[static_cast<std::size_t>(j)];
        if (diff == Complex(0.0, 0.0)) {
          diff = Complex(1e-12 * radius, 1e-12 * radius);
        }
        repulsion += Complex(1.0, 0.0) / diff;
      }
      const Complex denom = Complex(1.0, 0.0) - newton * repulsion;
      const Complex w = (denom == Complex(0.0, 0.0)) ? newton : newton / denom;
      z -= w;
      if (std::abs(w) > tol * std::max(1.0, std::abs(z))) {
        all_settled = false;
      }
    }
    out.sweeps = sweep;
    if (all_settled) {
      out.converged = true;
      break;
    }
  }
  const double scale =
      std::abs(p.coefficients.back()) * std::pow(std::max(1.0, radius), n);
  double worst = 0.0;
  for (const Complex& z : out.roots) {
    worst = std::max(worst, std::abs(eval(p, z).value));
  }
  out.residual = worst / scale;
  return out;
}

namespace {

// Plain bisection on phi over [lo, hi] with phi(lo) and phi(hi) of opposite
// sign; sign_lo is the sign of phi at lo.
double bisect_phi(const PelletInstance& inst, double lo, double hi, bool lo_negative,
                  double tol) {
  for (int it = 0; it < 2000 && (hi - lo) > tol * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = eval_phi(inst, mid).value;
    if ((v < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::pair<double, double> reference_radii(const PelletInstance& inst, double x_seed,
                                          double tol) {
  if (!(x_seed > 0.0) || !(eval_phi(inst, x_seed).value < 0.0)) {
    throw std::invalid_argument("reference_radii: need phi(x_seed) < 0");
  }
  double hi = std::max(phi_root_upper_bound(inst), x_seed);
  int expand = 0;
  while (eval_phi(inst, hi).value < 0.0) {
    hi *= 2.0;
    if (++expand > 64) {
      throw std::invalid_argument("reference_radii: no sign change above the seed");
    }
  }
  // phi(0) = eta_0 > 0 brackets the inner root from below.
  const double r_ref = bisect_phi(inst, 0.0, x_seed, false, tol);
  const double R_ref = bisect_phi(inst, x_seed, hi, true, tol);
  return {r_ref, R_ref};
}

int count_in_disk(const RootSet& roots, double radius, double slack) {
  const double cutoff = radius * (1.0 + slack);
  int count = 0;
  for (const Complex& z : roots.roots) {
    if (std::abs(z) <= cutoff) ++count;
  }
  return count;
}

namespace {

using PolyVec = std::vector<Complex>;  // ascending degree, may carry zeros

PolyVec poly_mul(const PolyVec& a, const PolyVec& b) {
  PolyVec out(a.size() + b.size() - 1, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

void poly_add(PolyVec& a, const PolyVec& b, Complex factor) {
  if (b.size() > a.size()) a.resize(b.size(), Complex(0.0, 0.0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += factor * b[i];
}

// Entry (i, j) of P as a scalar polynomial in z.
PolyVec entry_poly(const MatrixPolynomial& P, int i, int j) {
  PolyVec out(P.matrices.size());
  for (std::size_t d = 0; d < P.matrices.size(); ++d) {
    out[d] = P.matrices[d](i, j);
  }
  return out;
}

PolyVec det_recursive(const std::vector<PolyVec>& entries, std::vector<int>& cols,
                      int row, int m) {
  if (static_cast<int>(cols.size()) == 1) {
    return entries[static_cast<std::size_t>(row * m + cols[0])];
  }
  PolyVec acc{Complex(0.0, 0.0)};
  for (std::size_t pick = 0; pick < cols.size(); ++pick) {
    const int col = cols[pick];
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(pick));
    const PolyVec minor = det_recursive(entries, cols, row + 1, m);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(pick), col);
    const PolyVec term =
        poly_mul(entries[static_cast<std::size_t>(row * m + col)], minor);
    poly_add(acc, term, (pick % 2 == 0) ? Complex(1.0, 0.0) : Complex(-1.0, 0.0));
  }
  return acc;
}

}  // namespace

Polynomial determinant_polynomial(const MatrixPolynomial& P) {
  if (P.m > 8) {
    throw std::invalid_argument(
        "determinant_polynomial: cofactor expansion is desk-scale (m <= 8)");
  }
  std::vector<PolyVec> entries;
  entries.reserve(static_cast<std::size_t>(P.m) * P.m);
  for (int i = 0; i < P.m; ++i) {
    for (int j = 0; j < P.m; ++j) {
      entries.push_back(entry_poly(P, i, j));
    }
  }
  std::vector<int> cols(static_cast<std::size_t>(P.m));
  for (int j = 0; j < P.m; ++j) cols[static_cast<std::size_t>(j)] = j;
  PolyVec det = det_recursive(entries, cols, 0, P.m);
  while (det.size() > 1 && det.back() == Complex(0.0, 0.0)) {
    det.pop_back();  // A_n singular: infinite eigenvalues drop the degree
  }
  if (det.size() == 1 && det.front() == Complex(0.0, 0.0)) {
    throw std::invalid_argument("determinant_polynomial: det P is identically zero");
  }
  return make_polynomial(std::move(det));
}

}  // namespace pellet
