#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dynbc/errors.hpp"
#include "dynbc/types.hpp"

namespace dynbc {

/// Initial-value problem for the coupled interior/boundary system: heat flow
/// on (0, beta) whose Dirichlet traces evolve under the autonomous law
/// v' = B v, integrated up to t_max.
struct Problem {
  DomainParams params;
  BoundaryMatrix B;
  GridFunction u0;
  BoundaryState v0;
  double t_max;

  Problem(DomainParams params_, BoundaryMatrix B_, GridFunction u0_, BoundaryState v0_,
          double t_max_)
      : params(params_), B(std::move(B_)), u0(std::move(u0_)), v0(std::move(v0_)), t_max(t_max_) {
    detail::require(u0.size() == params.interior_points(), "Problem: u0 size mismatch");
    detail::require(B.dim() == 2 && v0.size() == 2, "Problem: boundary system must be 2x2");
    detail::require(B.all_finite(), "Problem: B must be finite");
    detail::require(std::isfinite(t_max) && t_max > 0.0, "Problem: t_max must be positive");
  }
};

/// Test problem with a separable closed-form solution: beta = pi, c = 1,
/// u0 = cos(x/2) + sinh(x), decoupled boundary rates -1/4 and 1.
inline Problem example1_problem(std::size_t nx, double t_max = 2.0) {
  DomainParams p(1.0, pi, nx);
  GridFunction u0{std::vector<double>(p.interior_points())};
  for (std::size_t j = 1; j < p.nx; ++j) {
    const double x = p.grid_x(j);
    u0.values[j - 1] = std::cos(0.5 * x) + std::sinh(x);
  }
  BoundaryState v0{{1.0, std::sinh(pi)}};
  BoundaryMatrix B = BoundaryMatrix::from_rows({{-0.25, 0.0}, {0.0, 1.0}});
  return Problem(p, B, u0, v0, t_max);
}

/// Test problem with oscillating boundary data: beta = 1, c = 0.1, Gaussian
/// bump initial state, boundary values coupled into a harmonic oscillator.
inline Problem example2_problem(std::size_t nx, double t_max = 2.0) {
  const double c1 = 0.1;   // diffusivity
  const double c2 = 9.0;   // bump amplitude
  const double c3 = 10.0;  // bump sharpness; also the oscillator frequency^2
  const double c4 = 0.1;   // initial boundary velocity scale
  DomainParams p(c1, 1.0, nx);
  GridFunction u0{std::vector<double>(p.interior_points())};
  for (std::size_t j = 1; j < p.nx; ++j) {
    const double x = p.grid_x(j);
    u0.values[j - 1] = c2 * std::exp(-c3 * (x - 0.5) * (x - 0.5));
  }
  BoundaryState v0{{1.0, -c4}};
  BoundaryMatrix B = BoundaryMatrix::from_rows({{0.0, 1.0}, {-c3, 0.0}});
  return Problem(p, B, u0, v0, t_max);
}

}  // namespace dynbc
