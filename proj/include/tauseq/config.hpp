#pragma once

#include "tauseq/catalog.hpp"

#include <string>

namespace tauseq {

/// Parsed engine configuration: the quiver and the coefficient algebra.
struct RunConfig {
  Quiver quiver;
  LocalCoefficientAlgebra coeffs = LocalCoefficientAlgebra::truncated_polynomial(1);
  std::string algebra_id;
};

/// Sectioned plain-text grammar:
///   [quiver]
///   vertices = 3
///   arrow a = 1 -> 2
///   [coefficients]
///   type = truncated_polynomial | structure_constants
///   t = 2                      (truncated polynomial)
///   basis = 1,x,y              (structure constants; unit first)
///   mult x*y = 0               (radical products, one per unordered pair)
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

TensorSetup setup_from_config(const RunConfig& cfg);

}  // namespace tauseq
