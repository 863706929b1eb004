#pragma once

#include <cmath>
#include <vector>

#include "dynbc/errors.hpp"
#include "dynbc/state.hpp"
#include "dynbc/types.hpp"

namespace dynbc {

/// Closed-form solution of the first test problem (beta = pi, c = 1):
///   u(t, x) = exp(-t/4) cos(x/2) + exp(t) sinh(x)
/// with boundary values (exp(-t/4), exp(t) sinh(pi)).
inline CoupledState exact_solution_example1(double t, const DomainParams& p) {
  if (std::abs(p.beta - pi) > 1e-12 || std::abs(p.c - 1.0) > 1e-12) {
    throw ConfigError("exact_solution_example1: requires beta = pi and c = 1");
  }
  detail::require(std::isfinite(t) && t >= 0.0, "exact_solution_example1: t must be nonnegative");
  const double slow = std::exp(-0.25 * t);
  const double fast = std::exp(t);
  GridFunction u{std::vector<double>(p.interior_points())};
  for (std::size_t j = 1; j < p.nx; ++j) {
    const double x = p.grid_x(j);
    u.values[j - 1] = slow * std::cos(0.5 * x) + fast * std::sinh(x);
  }
  BoundaryState v{{slow, fast * std::sinh(pi)}};
  return CoupledState{std::move(u), std::move(v)};
}

/// Closed-form boundary trajectory of the second test problem, a harmonic
/// oscillator with frequency sqrt(c3) started at (1, -c4):
///   v(t) = (cos(wt) - (c4/w) sin(wt), -w sin(wt) - c4 cos(wt)),  w = sqrt(c3).
inline BoundaryState exact_boundary_example2(double t, double c3 = 10.0, double c4 = 0.1) {
  if (!(std::isfinite(c3) && c3 > 0.0)) {
    throw ConfigError("exact_boundary_example2: c3 must be positive");
  }
  detail::require(std::isfinite(t) && std::isfinite(c4), "exact_boundary_example2: bad argument");
  const double w = std::sqrt(c3);
  const double cwt = std::cos(w * t);
  const double swt = std::sin(w * t);
  return BoundaryState{{cwt - (c4 / w) * swt, -w * swt - c4 * cwt}};
}

}  // namespace dynbc
