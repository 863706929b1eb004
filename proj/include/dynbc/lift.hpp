#pragma once

#include <cstddef>
#include <vector>

#include "dynbc/errors.hpp"
#include "dynbc/types.hpp"

namespace dynbc {

/// Dirichlet lift D0: extends boundary values (a, b) to the affine function
/// a*(beta - x)/beta + b*x/beta sampled on the interior grid.  The affine
/// extension is the discrete harmonic with those traces, so centered second
/// differences of the result vanish.
inline GridFunction dirichlet_lift(const BoundaryState& v, const DomainParams& p) {
  detail::require(v.size() == 2, "dirichlet_lift: only two-sided boundary data is supported");
  const double a = v.v[0];
  const double b = v.v[1];
  const double inv_nx = 1.0 / static_cast<double>(p.nx);
  GridFunction g{std::vector<double>(p.interior_points())};
  for (std::size_t j = 1; j < p.nx; ++j) {
    g.values[j - 1] = (a * static_cast<double>(p.nx - j) + b * static_cast<double>(j)) * inv_nx;
  }
  return g;
}

}  // namespace dynbc
