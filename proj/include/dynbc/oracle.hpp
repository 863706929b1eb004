#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dynbc/errors.hpp"
#include "dynbc/heat.hpp"
#include "dynbc/lift.hpp"
#include "dynbc/matexp.hpp"
#include "dynbc/stepping.hpp"
#include "dynbc/types.hpp"

namespace dynbc {

/// Composite-Simpson approximation of the convolution
///   integral_0^t  T0(t - s) D0 S(s) B y  ds
/// built only from the elementary flows.  This is the limit object the
/// coupling blocks V_n approach (up to sign), evaluated by quadrature rather
/// than by splitting, so the two routes are independent.
inline GridFunction convolution_oracle(double t, const BoundaryState& y, std::size_t n_quad,
                                       const BoundaryMatrix& B, const DomainParams& p) {
  detail::require(std::isfinite(t) && t >= 0.0, "convolution_oracle: t must be nonnegative");
  detail::require(n_quad >= 2 && n_quad % 2 == 0, "convolution_oracle: n_quad must be even, >= 2");
  GridFunction acc{std::vector<double>(p.interior_points(), 0.0)};
  if (t == 0.0) return acc;
  const BoundaryState by = apply_boundary_matrix(y, B);
  const double h = t / static_cast<double>(n_quad);
  for (std::size_t q = 0; q <= n_quad; ++q) {
    const double s = (q == n_quad) ? t : h * static_cast<double>(q);
    const double weight = (q == 0 || q == n_quad) ? 1.0 : (q % 2 == 1 ? 4.0 : 2.0);
    const GridFunction lifted = dirichlet_lift(boundary_propagate(by, s, B), p);
    const GridFunction f = heat_propagate(lifted, t - s, p);
    const double wq = weight * h / 3.0;
    for (std::size_t i = 0; i < acc.size(); ++i) acc.values[i] += wq * f.values[i];
  }
  return acc;
}

/// Defect of the coupling-block power against the quadrature limit for each
/// requested n; the sign convention makes the sum V_n(t/n) y + integral
/// vanish in the limit.
struct VnDefect {
  std::size_t n;
  double defect;
};

inline std::vector<VnDefect> vn_rate_check(const Scheme& scheme, double t, const BoundaryState& y,
                                           const std::vector<std::size_t>& n_list,
                                           const BoundaryMatrix& B, const DomainParams& p,
                                           std::size_t n_quad = 512) {
  detail::require(!n_list.empty(), "vn_rate_check: empty n list");
  for (double yi : y.v) detail::require(std::isfinite(yi), "vn_rate_check: y must be finite");
  const GridFunction integral = convolution_oracle(t, y, n_quad, B, p);
  std::vector<VnDefect> out;
  out.reserve(n_list.size());
  for (std::size_t n : n_list) {
    const GridFunction vn = apply_Vn(scheme, n, t, y, B, p);
    double s = 0.0;
    for (std::size_t i = 0; i < vn.size(); ++i) {
      const double d = vn.values[i] + integral.values[i];
      s += d * d;
    }
    out.push_back(VnDefect{n, std::sqrt(s)});
  }
  return out;
}

}  // namespace dynbc
