#pragma once

#include <cstddef>

#include "dynbc/errors.hpp"
#include "dynbc/lift.hpp"
#include "dynbc/types.hpp"

namespace dynbc {

/// Coupled state in physical coordinates: interior samples u plus boundary
/// values v.
struct CoupledState {
  GridFunction u;
  BoundaryState v;
};

/// Same state after the triangularizing change of variables w = u - D0 v.
/// The boundary component is untouched by the transform.
struct TriangularState {
  GridFunction w;
  BoundaryState v;
};

inline TriangularState to_triangular(const CoupledState& s, const DomainParams& p) {
  detail::require(s.u.size() == p.interior_points(), "to_triangular: grid size mismatch");
  const GridFunction lift = dirichlet_lift(s.v, p);
  TriangularState t{s.u, s.v};
  for (std::size_t j = 0; j < t.w.size(); ++j) t.w.values[j] -= lift.values[j];
  return t;
}

inline CoupledState from_triangular(const TriangularState& s, const DomainParams& p) {
  detail::require(s.w.size() == p.interior_points(), "from_triangular: grid size mismatch");
  const GridFunction lift = dirichlet_lift(s.v, p);
  CoupledState c{s.w, s.v};
  for (std::size_t j = 0; j < c.u.size(); ++j) c.u.values[j] += lift.values[j];
  return c;
}

}  // namespace dynbc
