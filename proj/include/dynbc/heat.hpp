#pragma once

#include <cmath>

#include "dynbc/dst.hpp"
#include "dynbc/errors.hpp"
#include "dynbc/types.hpp"

namespace dynbc {

/// Homogeneous-Dirichlet heat semigroup on (0, beta): damps the k-th sine
/// mode by exp(-c*(k*pi/beta)^2 * t).  Exact in time for data resolved on
/// the grid; t = 0 reduces to a transform roundtrip.
inline GridFunction heat_propagate(const GridFunction& g, double t, const DomainParams& p) {
  detail::require(std::isfinite(t) && t >= 0.0, "heat_propagate: t must be nonnegative");
  SpectrumFunction s = dst_forward(g, p);
  const double base = p.c * (pi / p.beta) * (pi / p.beta);
  for (std::size_t k = 1; k <= s.size(); ++k) {
    const double lambda = base * static_cast<double>(k) * static_cast<double>(k);
    s.coeffs[k - 1] *= std::exp(-lambda * t);
  }
  return dst_inverse(s, p);
}

}  // namespace dynbc
