#pragma once

#include <cmath>
#include <cstddef>

#include "dynbc/errors.hpp"
#include "dynbc/types.hpp"

namespace dynbc {

namespace detail {

inline BoundaryMatrix mat_mul(const BoundaryMatrix& a, const BoundaryMatrix& b) {
  const std::size_t d = a.dim();
  BoundaryMatrix r(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < d; ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

inline double mat_inf_norm(const BoundaryMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) row += std::abs(a(i, j));
    best = std::max(best, row);
  }
  return best;
}

}  // namespace detail

/// exp(t*B) by scaling and squaring around a truncated Taylor core.  The
/// argument is halved until its norm is at most 1/2, the series is summed to
/// double-precision stagnation, and the result squared back up.
inline BoundaryMatrix matrix_exp(const BoundaryMatrix& B, double t) {
  detail::require(B.dim() >= 1, "matrix_exp: empty matrix");
  detail::require(B.all_finite() && std::isfinite(t), "matrix_exp: entries and t must be finite");
  const std::size_t d = B.dim();

  BoundaryMatrix A(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) A(i, j) = t * B(i, j);

  int squarings = 0;
  double norm = detail::mat_inf_norm(A);
  while (norm > 0.5) {
    norm *= 0.5;
    ++squarings;
  }
  const double scale = std::ldexp(1.0, -squarings);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) A(i, j) *= scale;

  BoundaryMatrix result = BoundaryMatrix::identity(d);
  BoundaryMatrix term = BoundaryMatrix::identity(d);
  for (int k = 1; k <= 40; ++k) {
    term = detail::mat_mul(term, A);
    const double inv_k = 1.0 / static_cast<double>(k);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        term(i, j) *= inv_k;
        result(i, j) += term(i, j);
      }
    if (detail::mat_inf_norm(term) <= 0x1p-60 * detail::mat_inf_norm(result)) break;
  }
  for (int s = 0; s < squarings; ++s) result = detail::mat_mul(result, result);
  return result;
}

/// Matrix-vector product B*v.
inline BoundaryState apply_boundary_matrix(const BoundaryState& v, const BoundaryMatrix& B) {
  detail::require(v.size() == B.dim(), "apply_boundary_matrix: dimension mismatch");
  BoundaryState out{std::vector<double>(v.size(), 0.0)};
  for (std::size_t i = 0; i < B.dim(); ++i)
    for (std::size_t j = 0; j < B.dim(); ++j) out.v[i] += B(i, j) * v.v[j];
  return out;
}

/// Boundary flow S(t)v = exp(t*B)v.  t may be negative; the flow is a group.
inline BoundaryState boundary_propagate(const BoundaryState& v, double t, const BoundaryMatrix& B) {
  detail::require(v.size() == B.dim(), "boundary_propagate: dimension mismatch");
  return apply_boundary_matrix(v, matrix_exp(B, t));
}

}  // namespace dynbc
