#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "dynbc/dynbc.hpp"

namespace testutil {

inline std::vector<double> random_vector(std::size_t n, unsigned seed, double lo = -1.0,
                                         double hi = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(n);
  for (double& x : out) x = dist(rng);
  return out;
}

inline dynbc::GridFunction random_grid(const dynbc::DomainParams& p, unsigned seed) {
  return dynbc::GridFunction{random_vector(p.interior_points(), seed)};
}

inline dynbc::BoundaryState random_boundary(unsigned seed) {
  return dynbc::BoundaryState{random_vector(2, seed)};
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double l2_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace testutil
