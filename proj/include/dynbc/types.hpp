#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "dynbc/errors.hpp"

namespace dynbc {

/// Spatial domain (0, beta) with diffusivity c, split into nx uniform cells.
/// Interior nodes are x_j = j*beta/nx, j = 1..nx-1; the endpoints belong to
/// the boundary state, not the grid.  nx must be a power of two so the sine
/// transform can run through a radix-2 butterfly.
struct DomainParams {
  double c;
  double beta;
  std::size_t nx;

  DomainParams(double c_, double beta_, std::size_t nx_) : c(c_), beta(beta_), nx(nx_) {
    detail::require(std::isfinite(c) && c > 0.0, "DomainParams: c must be positive and finite");
    detail::require(std::isfinite(beta) && beta > 0.0,
                    "DomainParams: beta must be positive and finite");
    detail::require(nx >= 4 && (nx & (nx - 1)) == 0,
                    "DomainParams: nx must be a power of two >= 4");
  }

  std::size_t interior_points() const { return nx - 1; }

  double grid_x(std::size_t j) const {
    return static_cast<double>(j) * beta / static_cast<double>(nx);
  }
};

/// Real samples on the interior grid; values[j-1] is the value at x_j.
struct GridFunction {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
};

/// Coefficients of the sine expansion on (0, beta); coeffs[k-1] multiplies
/// sin(k*pi*x/beta).
struct SpectrumFunction {
  std::vector<double> coeffs;

  std::size_t size() const { return coeffs.size(); }
};

/// Dirichlet data at the two ends of the interval: v[0] at x = 0,
/// v[1] at x = beta.
struct BoundaryState {
  std::vector<double> v;

  std::size_t size() const { return v.size(); }
};

/// Small dense square matrix; generator of the boundary dynamics.
class BoundaryMatrix {
 public:
  BoundaryMatrix() = default;

  explicit BoundaryMatrix(std::size_t dim, double fill = 0.0) : dim_(dim), a_(dim * dim, fill) {}

  static BoundaryMatrix identity(std::size_t dim) {
    BoundaryMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static BoundaryMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    BoundaryMatrix m(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
      detail::require(row.size() == m.dim_, "BoundaryMatrix: rows must form a square matrix");
      std::size_t j = 0;
      for (double x : row) m(i, j++) = x;
      ++i;
    }
    return m;
  }

  std::size_t dim() const { return dim_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

  bool all_finite() const {
    for (double x : a_) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> a_;
};

inline constexpr double pi = std::numbers::pi;

inline double l2_norm(const std::vector<double>& x) {
  double s = 0.0;
  for (double xi : x) s += xi * xi;
  return std::sqrt(s);
}

inline double max_abs(const std::vector<double>& x) {
  double m = 0.0;
  for (double xi : x) m = std::max(m, std::abs(xi));
  return m;
}

}  // namespace dynbc
