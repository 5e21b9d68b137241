// Copyright (c) the pellet authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#include "pellet/io.hpp"

#include <stdexcept>

namespace pellet {

namespace {

Complex complex_from_json(const nlohmann::json& j, const char* where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument(std::string(where) + ": expected [re, im] pair");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

Polynomial polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("coefficients") || !j["coefficients"].is_array()) {
    throw std::invalid_argument("polynomial: expected {\"coefficients\": [[re, im], ...]}");
  }
  std::vector<Complex> coeffs;
  coeffs.reserve(j["coefficients"].size());
  for (const auto& c : j["coefficients"]) {
    coeffs.push_back(complex_from_json(c, "polynomial coefficient"));
  }
  return make_polynomial(std::move(coeffs));
}

nlohmann::json polynomial_to_json(const Polynomial& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const Complex& c : p.coefficients) {
    coeffs.push_back({c.real(), c.imag()});
  }
  return nlohmann::json{{"coefficients", std::move(coeffs)}};
}

MatrixPolynomial matrix_polynomial_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("m") || !j["m"].is_number_integer() ||
      !j.contains("matrices") || !j["matrices"].is_array()) {
    throw std::invalid_argument(
        "matrix polynomial: expected {\"m\": int, \"matrices\": [...]}");
  }
  const int m = j["m"].get<int>();
  if (m < 1) {
    throw std::invalid_argument("matrix polynomial: m must be positive");
  }
  std::vector<Matrix> matrices;
  matrices.reserve(j["matrices"].size());
  for (const auto& mat : j["matrices"]) {
    if (!mat.is_array() || static_cast<int>(mat.size()) != m) {
      throw std::invalid_argument("matrix polynomial: each matrix needs m rows");
    }
    Matrix a(m);
    for (int i = 0; i < m; ++i) {
      const auto& row = mat[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<int>(row.size()) != m) {
        throw std::invalid_argument("matrix polynomial: each row needs m entries");
      }
      for (int col = 0; col < m; ++col) {
        a(i, col) = complex_from_json(row[static_cast<std::size_t>(col)], "matrix entry");
      }
    }
    matrices.push_back(std::move(a));
  }
  return make_matrix_polynomial(std::move(matrices));
}

nlohmann::json matrix_polynomial_to_json(const MatrixPolynomial& P) {
  nlohmann::json matrices = nlohmann::json::array();
  for (const Matrix& a : P.matrices) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < P.m; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < P.m; ++j) {
        row.push_back({a(i, j).real(), a(i, j).imag()});
      }
      rows.push_back(std::move(row));
    }
    matrices.push_back(std::move(rows));
  }
  return nlohmann::json{{"m", P.m}, {"matrices", std::move(matrices)}};
}

}  // namespace pellet
