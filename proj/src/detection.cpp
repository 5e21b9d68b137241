// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pellet/detection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pellet/errors.hpp"

namespace pellet {

ChiPolynomial build_chi(const PelletInstance& inst) {
  const int n = inst.degree();
  ChiPolynomial chi;
  chi.k = inst.k;
  chi.coefficients.resize(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    chi.coefficients[static_cast<std::size_t>(j)] =
        (j - inst.k) * inst.eta[static_cast<std::size_t>(j)];
  }
  chi.coefficients[static_cast<std::size_t>(inst.k)] = 0.0;
  return chi;
}

PhiEval eval_chi(const ChiPolynomial& chi, double x) {
  double v = 0.0;
  double d = 0.0;
  for (auto it = chi.coefficients.rbegin(); it != chi.coefficients.rend(); ++it) {
    d = d * x + v;
    v = v * x + *it;
  }
  return {v, d};
}

namespace detail {

double one_sign_change_root_bound(const std::vector<double>& coefficients) {
  const int n = static_cast<int>(coefficients.size()) - 1;
  double pos_sum = 0.0, neg_sum = 0.0;
  int lowest_pos = -1, highest_neg = -1;
  for (int j = 0; j <= n; ++j) {
    const double c = coefficients[static_cast<std::size_t>(j)];
    if (c > 0.0) {
      pos_sum += c;
      if (lowest_pos < 0) lowest_pos = j;
    } else if (c < 0.0) {
      neg_sum -= c;
      highest_neg = j;
    }
  }
  if (lowest_pos < 0 || highest_neg < 0 || highest_neg > lowest_pos) {
    throw std::invalid_argument("root bound: coefficients lack the one-sign-change shape");
  }
  const double at_one = pos_sum - neg_sum;
  if (at_one == 0.0) {
    return 1.0;
  }
  const double ratio = neg_sum / pos_sum;
  if (at_one < 0.0) {
    return std::pow(ratio, 1.0 / (lowest_pos - highest_neg));
  }
  return std::pow(ratio, 1.0 / n);
}

}  // namespace detail

double positive_root_upper_bound(const ChiPolynomial& chi) {
  return detail::one_sign_change_root_bound(chi.coefficients);
}

double phi_root_upper_bound(const PelletInstance& inst) {
  // Dropping the positive terms below k only lowers phi, so the root of the
  // envelope bounds phi's largest root from above.
  const int n = inst.degree();
  std::vector<double> envelope(static_cast<std::size_t>(n) + 1, 0.0);
  for (int j = inst.k + 1; j <= n; ++j) {
    envelope[static_cast<std::size_t>(j)] = inst.eta[static_cast<std::size_t>(j)];
  }
  envelope[static_cast<std::size_t>(inst.k)] =
      -inst.eta[static_cast<std::size_t>(inst.k)];
  return detail::one_sign_change_root_bound(envelope);
}

ChiRoot solve_chi_root(const ChiPolynomial& chi, double tol, int max_steps) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("solve_chi_root: tol must be positive");
  }
  ChiRoot out;
  double lo = 0.0;  // chi(0) = -k eta_0 < 0
  double hi = positive_root_upper_bound(chi);
  // The bound is exact for two-term chi; nudge outward if rounding left it
  // a hair inside the root.
  for (int tries = 0; eval_chi(chi, hi).value < 0.0 && tries < 64; ++tries) {
    lo = hi;
    hi *= 2.0;
  }
  // x always sits on the chi >= 0 side, so the accepted iterates decrease
  // monotonically toward the root. Probes that land on the negative side
  // only raise the bracket floor; they are not iterates.
  double x = hi;
  PhiEval e = eval_chi(chi, x);
  out.iterates.push_back(x);
  double prev_step = x - lo;
  const auto finish = [&](bool ok) {
    out.x_star = x;
    out.converged = ok;
    out.bracket_lo = lo;
    out.bracket_hi = x;
    return out;
  };
  for (int step = 1; step <= max_steps; ++step) {
    out.steps = step;
    if (e.value == 0.0) {
      return finish(true);
    }
    // Newton from the right; bisect when the step leaves the bracket or
    // stops halving the progress (far from the root the relative Newton
    // step of a degree-n polynomial is only ~1/n per iteration).
    double candidate =
        (e.derivative > 0.0) ? x - e.value / e.derivative : lo;
    if (!(candidate > lo) || !(candidate <= x) || !std::isfinite(candidate) ||
        x - candidate > 0.5 * prev_step) {
      candidate = 0.5 * (lo + x);
    }
    prev_step = x - candidate;
    const PhiEval probe = eval_chi(chi, candidate);
    if (probe.value >= 0.0) {
      const double move = x - candidate;
      x = candidate;
      e = probe;
      out.iterates.push_back(x);
      if (move <= tol * x) {
        return finish(true);
      }
    } else {
      lo = candidate;
    }
    if (x - lo <= tol * x) {
      return finish(true);
    }
  }
  return finish(false);
}

double separation_threshold(const PelletInstance& inst, double x_star) {
  if (!(x_star > 0.0)) {
    throw std::invalid_argument("separation_threshold: x_star must be positive");
  }
  double sigma = 0.0;
  for (int j = inst.degree(); j >= 0; --j) {
    const double c = (j == inst.k) ? 0.0 : inst.eta[static_cast<std::size_t>(j)];
    sigma = sigma * x_star + c;
  }
  return sigma / std::pow(x_star, inst.k);
}

Detection detect(const PelletInstance& inst, double tol) {
  const ChiPolynomial chi = build_chi(inst);
  const ChiRoot root = solve_chi_root(chi, tol);
  if (!root.converged) {
    std::ostringstream msg;
    msg << "detect: x* did not converge within " << root.steps
        << " steps; last bracket [" << root.bracket_lo << ", " << root.bracket_hi << "]";
    throw ConvergenceError(msg.str());
  }
  Detection det;
  det.x_star = root.x_star;
  det.chi_newton_steps = root.steps;
  det.phi_at_x_star = eval_phi(inst, root.x_star).value;
  det.threshold = separation_threshold(inst, root.x_star);
  det.margin = inst.eta[static_cast<std::size_t>(inst.k)] - det.threshold;
  const double band =
      tol * std::max(1.0, det.threshold) * std::pow(root.x_star, inst.k);
  if (det.phi_at_x_star < -band) {
    det.exists = Existence::yes;
  } else if (det.phi_at_x_star > band) {
    det.exists = Existence::no;
  } else {
    det.exists = Existence::indeterminate;
  }
  return det;
}

}  // namespace pellet
