// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pellet/annulus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "pellet/detection.hpp"
#include "pellet/errors.hpp"

namespace pellet {

namespace {

double trinomial_scale(const Trinomial& tri, double x) {
  return tri.alpha * std::pow(x, tri.n) + tri.beta * std::pow(x, tri.k) + tri.gamma;
}

double trinomial_slack(const Trinomial& tri, double x) {
  return 64.0 * std::numeric_limits<double>::epsilon() * trinomial_scale(tri, x);
}

}  // namespace

Trinomial fit_trinomial(const PelletInstance& inst, double x_bar) {
  if (!(x_bar > 0.0)) {
    throw std::invalid_argument("fit_trinomial: fit point must be positive");
  }
  const PhiSplitEval s = eval_phi_split(inst, x_bar);
  const double phi = s.phi1 + s.phi2;
  if (phi > detail::phi_rounding_slack(inst, x_bar)) {
    std::ostringstream msg;
    msg << "fit_trinomial: phi(" << x_bar << ") = " << phi
        << " > 0, not a valid starting point";
    throw std::invalid_argument(msg.str());
  }
  const int n = inst.degree();
  const int k = inst.k;
  Trinomial tri;
  tri.n = n;
  tri.k = k;
  tri.fit_point = x_bar;
  tri.alpha = s.dphi1 * std::pow(x_bar, 1 - n) / n;
  tri.beta = -s.dphi2 * std::pow(x_bar, 1 - k) / k;
  // gamma = phi(x_bar) - x_bar (phi1'/n + phi2'/k), but that form cancels
  // catastrophically when the terms dwarf the result. Expanded per
  // coefficient every contribution is nonnegative:
  //   gamma = sum_{j>k} (n-j)/n eta_j x^j + sum_{j<k} (k-j)/k eta_j x^j.
  double gamma = 0.0;
  for (int j = n - 1; j >= 0; --j) {
    const double eta_j = inst.eta[static_cast<std::size_t>(j)];
    double weight = 0.0;
    if (j > k) {
      weight = static_cast<double>(n - j) / n;
    } else if (j < k) {
      weight = static_cast<double>(k - j) / k;
    }
    gamma = gamma * x_bar + weight * eta_j;
  }
  tri.gamma = gamma;
  if (!(tri.alpha > 0.0) || !(tri.beta > 0.0) || !(tri.gamma > 0.0)) {
    std::ostringstream msg;
    msg << "fit_trinomial: degenerate fit at " << x_bar << " (alpha=" << tri.alpha
        << ", beta=" << tri.beta << ", gamma=" << tri.gamma << ")";
    throw std::runtime_error(msg.str());
  }
  return tri;
}

double eval_trinomial(const Trinomial& tri, double x) {
  return tri.alpha * std::pow(x, tri.n) - tri.beta * std::pow(x, tri.k) + tri.gamma;
}

Surrogate fit_surrogate(const Trinomial& tri, double x_bar) {
  if (!(x_bar > 0.0)) {
    throw std::invalid_argument("fit_surrogate: fit point must be positive");
  }
  if (eval_trinomial(tri, x_bar) > trinomial_slack(tri, x_bar)) {
    std::ostringstream msg;
    msg << "fit_surrogate: f(" << x_bar << ") > 0, not a valid fit point";
    throw std::invalid_argument(msg.str());
  }
  Surrogate sur;
  sur.parent = tri;
  sur.fit_point = x_bar;
  sur.delta = (static_cast<double>(tri.k) / tri.n) * std::pow(x_bar, tri.k + tri.n);
  sur.epsilon =
      (static_cast<double>(tri.n + tri.k) / tri.n) * std::pow(x_bar, tri.k);
  return sur;
}

double eval_surrogate(const Surrogate& sur, double x) {
  const double yk = std::pow(x, sur.parent.k);
  return sur.parent.alpha * sur.delta / (sur.epsilon - yk) - sur.parent.beta * yk +
         sur.parent.gamma;
}

double surrogate_pole(const Surrogate& sur) {
  return std::pow(sur.epsilon, 1.0 / sur.parent.k);
}

std::pair<double, double> surrogate_roots(const Surrogate& sur) {
  const Trinomial& tri = sur.parent;
  const double xb = sur.fit_point;
  // Rescaled to u = (x / x_bar)^k the quadratic reads
  //   f2 u^2 - (ce f2 + f3) u + (cd f1 + ce f3) = 0
  // with f1, f2, f3 the term values of f at the fit point and ce = (n+k)/n,
  // cd = k/n. This forms no power of x_bar beyond those already present in
  // f itself, so extreme fit points neither overflow nor underflow.
  const double f1 = tri.alpha * std::pow(xb, tri.n);
  const double f2 = tri.beta * std::pow(xb, tri.k);
  const double f3 = tri.gamma;
  const double ce = static_cast<double>(tri.n + tri.k) / tri.n;
  const double cd = static_cast<double>(tri.k) / tri.n;
  // Normalize by the largest coefficient: the roots are unchanged and the
  // discriminant can no longer overflow even when the term values are huge.
  const double scale = std::max({f2, ce * f2 + f3, cd * f1 + ce * f3});
  const double a = f2 / scale;
  const double b = (ce * f2 + f3) / scale;
  const double c = (cd * f1 + ce * f3) / scale;
  double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    // f(fit_point) <= 0 guarantees real roots; only rounding can land here.
    if (disc < -16.0 * std::numeric_limits<double>::epsilon() * b * b) {
      throw std::runtime_error("surrogate_roots: negative discriminant, invalid fit point");
    }
    disc = 0.0;
  }
  // Larger-magnitude root first, partner via the product, so neither
  // suffers cancellation. All of a, b, c are positive here.
  const double q = 0.5 * (b + std::sqrt(disc));
  double u_large = q / a;
  double u_small = c / q;
  // Both roots lie below the pole at u = ce; clamp rounding spill.
  const double cap = ce * (1.0 - std::numeric_limits<double>::epsilon());
  u_large = std::min(u_large, cap);
  u_small = std::min(u_small, u_large);
  const double inv_k = 1.0 / tri.k;
  return {xb * std::pow(u_small, inv_k), xb * std::pow(u_large, inv_k)};
}

TrinomialRoot solve_trinomial_root(const Trinomial& tri, double x_start, RootSide side,
                                   double tol, int max_iter) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("solve_trinomial_root: tol must be positive");
  }
  if (eval_trinomial(tri, x_start) > trinomial_slack(tri, x_start)) {
    throw std::invalid_argument("solve_trinomial_root: f(x_start) > 0");
  }
  double x = x_start;
  for (int it = 1; it <= max_iter; ++it) {
    const Surrogate sur = fit_surrogate(tri, x);
    const auto [s1, s2] = surrogate_roots(sur);
    double next = (side == RootSide::upper) ? s2 : s1;
    const double step = std::abs(next - x);
    // The iteration is monotone; absorb sub-ulp jitter rather than step
    // back across the root.
    next = (side == RootSide::upper) ? std::max(next, x) : std::min(next, x);
    x = next;
    if (step <= tol * x) {
      return {x, it};
    }
  }
  std::ostringstream msg;
  msg << "solve_trinomial_root: no convergence in " << max_iter
      << " iterations (last x = " << x << ")";
  throw ConvergenceError(msg.str());
}

namespace {

struct SideRun {
  std::vector<double> iterates;
  std::vector<int> inner_counts;
  bool converged = false;
};

// One surrogate step can move outward by at most the pole factor
// ((n+k)/n)^{1/k}, about 1 + 1/n, so reaching a root a factor Q away takes
// ~ n ln(Q) inner iterations before the quadratic tail kicks in. Budget for
// the climb up to the envelope bound on R.
int inner_budget(const PelletInstance& inst, double x_start) {
  const double pole_log =
      std::log1p(static_cast<double>(inst.k) / inst.degree()) / inst.k;
  const double span = std::max(phi_root_upper_bound(inst) / x_start, 1.0);
  const double climb = std::log(span) / pole_log;
  return 100 + static_cast<int>(std::min(2.0 * climb, 1e6));
}

SideRun run_side(const PelletInstance& inst, double x_star, RootSide side, double tol,
                 int max_outer, int max_inner) {
  SideRun run;
  double x = x_star;
  run.iterates.push_back(x);
  try {
    for (int outer = 1; outer <= max_outer; ++outer) {
      const Trinomial tri = fit_trinomial(inst, x);
      const TrinomialRoot inner = solve_trinomial_root(tri, x, side, tol, max_inner);
      run.inner_counts.push_back(inner.iterations);
      const double step = std::abs(inner.root - x);
      x = (side == RootSide::upper) ? std::max(inner.root, x)
                                    : std::min(inner.root, x);
      run.iterates.push_back(x);
      if (step <= tol * x) {
        run.converged = true;
        break;
      }
    }
  } catch (const std::runtime_error&) {
    // Iteration cap or a degenerate fit at an extreme point; the iterates
    // collected so far are still correct bounds.
    run.converged = false;
  }
  return run;
}

}  // namespace

AnnulusResult pellet_annulus(const PelletInstance& inst, double x_star, double tol,
                             int max_outer) {
  if (!(x_star > 0.0)) {
    throw std::invalid_argument("pellet_annulus: starting point must be positive");
  }
  if (!(eval_phi(inst, x_star).value < 0.0)) {
    throw std::invalid_argument("pellet_annulus: phi(x_star) must be negative");
  }
  const int max_inner = inner_budget(inst, x_star);
  const SideRun upper = run_side(inst, x_star, RootSide::upper, tol, max_outer, max_inner);
  const SideRun lower = run_side(inst, x_star, RootSide::lower, tol, max_outer, max_inner);
  AnnulusResult out;
  out.k = inst.k;
  out.R = upper.iterates.back();
  out.r = lower.iterates.back();
  out.iterates_R = upper.iterates;
  out.iterates_r = lower.iterates;
  out.inner_counts_R = upper.inner_counts;
  out.inner_counts_r = lower.inner_counts;
  out.converged = upper.converged && lower.converged;
  out.zero_count = inst.k;
  return out;
}

}  // namespace pellet
