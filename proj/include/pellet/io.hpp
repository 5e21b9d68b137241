// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "json.hpp"
#include "pellet/matrix_pellet.hpp"
#include "pellet/polynomial.hpp"

namespace pellet {

// Polynomial schema: {"coefficients": [[re, im], ...]}, ascending degree.
Polynomial polynomial_from_json(const nlohmann::json& j);
nlohmann::json polynomial_to_json(const Polynomial& p);

// Matrix polynomial schema:
// {"m": int, "matrices": [ [[ [re, im], ... ] per row ] per degree ]}.
MatrixPolynomial matrix_polynomial_from_json(const nlohmann::json& j);
nlohmann::json matrix_polynomial_to_json(const MatrixPolynomial& P);

}  // namespace pellet
