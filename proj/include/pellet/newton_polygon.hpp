// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pellet/annulus.hpp"
#include "pellet/detection.hpp"
#include "pellet/polynomial.hpp"

namespace pellet {

/// Vertex abscissae of the upper convex hull of the support points
/// (j, log|a_j|). Separation at index k is only possible when k is one of
/// these, so they are the candidate set for the full analysis.
struct PolygonCandidates {
  std::vector<std::pair<int, double>> support;  // (j, log|a_j|), a_j != 0
  std::vector<int> vertices;                    // hull abscissae, ascending
  std::vector<int> candidates;                  // vertices restricted to 1..n-1
};

/// Computes the candidate indices. The hull is strict: collinear interior
/// points are not vertices. Requires a_0 != 0 (strip known zero roots
/// first) and a_n != 0.
PolygonCandidates candidate_ks(const Polynomial& p);

/// Outcome of the analysis at one index k. `annulus` is present only when
/// detection certified two roots and the root computation was attempted;
/// `error` is nonempty when this k failed (other indices are unaffected).
struct KAnalysis {
  int k = 0;
  std::optional<Detection> detection;
  std::optional<AnnulusResult> annulus;
  std::string error;
};

/// Runs detection (and, on a yes verdict, the annulus computation) for every
/// candidate index of p. Per-k failures are collected, not propagated.
/// Results are ordered by k.
std::vector<KAnalysis> analyze_all(const Polynomial& p, double tol = kDefaultTol);

}  // namespace pellet
