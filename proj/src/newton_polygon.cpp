// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pellet/newton_polygon.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pellet {

namespace {

// Cross product of (a -> b) x (a -> c); nonpositive means c does not turn
// the chain upward, so b is not a strict upper-hull vertex.
double cross(const std::pair<int, double>& a, const std::pair<int, double>& b,
             const std::pair<int, double>& c) {
  return (b.first - a.first) * (c.second - a.second) -
         (b.second - a.second) * (c.first - a.first);
}

}  // namespace

PolygonCandidates candidate_ks(const Polynomial& p) {
  if (p.coefficients.front() == Complex(0.0, 0.0)) {
    throw std::invalid_argument(
        "candidate_ks: a_0 must be nonzero (strip zero roots first)");
  }
  const int n = p.degree();
  PolygonCandidates out;
  out.support.reserve(p.coefficients.size());
  for (int j = 0; j <= n; ++j) {
    const double mag = std::abs(p.coefficients[static_cast<std::size_t>(j)]);
    if (mag == 0.0) continue;
    // Floor at the smallest normal double so the log stays finite.
    out.support.emplace_back(j, std::log(std::max(mag, std::numeric_limits<double>::min())));
  }
  // Monotone chain over points already sorted by abscissa. Popping on
  // cross >= 0 drops collinear interior points: the hull is strict.
  std::vector<std::pair<int, double>> hull;
  for (const auto& pt : out.support) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) >= 0.0) {
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  out.vertices.reserve(hull.size());
  for (const auto& v : hull) {
    out.vertices.push_back(v.first);
    if (v.first >= 1 && v.first <= n - 1) {
      out.candidates.push_back(v.first);
    }
  }
  return out;
}

std::vector<KAnalysis> analyze_all(const Polynomial& p, double tol) {
  if (p.degree() < 3) {
    throw std::invalid_argument("analyze_all: need degree >= 3");
  }
  const PolygonCandidates cand = candidate_ks(p);
  std::vector<KAnalysis> results;
  results.reserve(cand.candidates.size());
  for (int k : cand.candidates) {
    if (p.coefficients[static_cast<std::size_t>(k)] == Complex(0.0, 0.0)) {
      continue;  // hull vertices always have a_k != 0; guard regardless
    }
    KAnalysis entry;
    entry.k = k;
    try {
      const PelletInstance inst = pellet_instance(p, k);
      entry.detection = detect(inst, tol);
      if (entry.detection->exists == Existence::yes) {
        entry.annulus = pellet_annulus(inst, entry.detection->x_star, tol);
      }
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    results.push_back(std::move(entry));
  }
  return results;
}

}  // namespace pellet
