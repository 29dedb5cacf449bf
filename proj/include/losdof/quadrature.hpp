#pragma once

#include <cstddef>
#include <vector>

namespace losdof {

struct QuadratureRule {
  std::vector<double> nodes;    ///< ascending
  std::vector<double> weights;  ///< positive
};

/// N-point Gauss-Legendre rule mapped to [0, 1]; weights sum to 1.
/// Nodes are Newton-refined roots of P_N; exact for polynomials of degree <= 2N-1.
QuadratureRule gauss_legendre_unit(std::size_t n);

}  // namespace losdof
