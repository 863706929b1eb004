#pragma once

#include <cmath>
#include <string>

#include "dynbc/errors.hpp"

namespace dynbc {

/// Splitting scheme selector.  Weighted(theta) blends the two one-sided
/// orderings of the sub-flows; theta = 1 is exactly the Lie ordering and
/// theta = 0 its reverse.  NaiveLie is the frozen-boundary iteration in
/// physical coordinates and has no triangular-coordinate form.
class Scheme {
 public:
  enum class Kind { Lie, Strang, Weighted, NaiveLie };

  static Scheme lie() { return Scheme(Kind::Lie, 1.0); }
  static Scheme strang() { return Scheme(Kind::Strang, 0.5); }
  static Scheme naive_lie() { return Scheme(Kind::NaiveLie, 1.0); }

  static Scheme weighted(double theta) {
    detail::require(std::isfinite(theta) && theta >= 0.0 && theta <= 1.0,
                    "Scheme: theta must lie in [0, 1]");
    return Scheme(Kind::Weighted, theta);
  }

  Kind kind() const { return kind_; }
  double theta() const { return theta_; }

  std::string name() const {
    switch (kind_) {
      case Kind::Lie: return "lie";
      case Kind::Strang: return "strang";
      case Kind::Weighted: return "weighted";
      case Kind::NaiveLie: return "naive";
    }
    return "unknown";
  }

 private:
  Scheme(Kind kind, double theta) : kind_(kind), theta_(theta) {}

  Kind kind_;
  double theta_;
};

}  // namespace dynbc
