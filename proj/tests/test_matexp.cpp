#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "dynbc/matexp.hpp"
#include "test_util.hpp"

using dynbc::BoundaryMatrix;
using dynbc::BoundaryState;

namespace {

// Plain truncated Taylor series in extended precision, no scaling: an
// independent reference for arguments of moderate norm.
BoundaryMatrix taylor_reference(const BoundaryMatrix& B, double t, int terms = 80) {
  const std::size_t d = B.dim();
  std::vector<long double> result(d * d, 0.0L), term(d * d, 0.0L);
  for (std::size_t i = 0; i < d; ++i) {
    result[i * d + i] = 1.0L;
    term[i * d + i] = 1.0L;
  }
  for (int k = 1; k <= terms; ++k) {
    std::vector<long double> next(d * d, 0.0L);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t m = 0; m < d; ++m)
        for (std::size_t j = 0; j < d; ++j)
          next[i * d + j] += term[i * d + m] * static_cast<long double>(t * B(m, j));
    for (auto& x : next) x /= static_cast<long double>(k);
    term = next;
    for (std::size_t i = 0; i < d * d; ++i) result[i] += term[i];
  }
  BoundaryMatrix out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) out(i, j) = static_cast<double>(result[i * d + j]);
  return out;
}

double mat_rel_diff(const BoundaryMatrix& a, const BoundaryMatrix& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      num = std::max(num, std::abs(a(i, j) - b(i, j)));
      den = std::max(den, std::abs(b(i, j)));
    }
  return num / std::max(den, 1e-300);
}

}  // namespace

TEST_CASE("exponential of anything at t = 0 is the identity", "[matexp]") {
  const BoundaryMatrix B = BoundaryMatrix::from_rows({{3.0, -2.0}, {5.0, 7.0}});
  const BoundaryMatrix E = dynbc::matrix_exp(B, 0.0);
  REQUIRE(E(0, 0) == 1.0);
  REQUIRE(E(0, 1) == 0.0);
  REQUIRE(E(1, 0) == 0.0);
  REQUIRE(E(1, 1) == 1.0);
}

TEST_CASE("diagonal generators exponentiate entrywise", "[matexp]") {
  const BoundaryMatrix B = BoundaryMatrix::from_rows({{-0.25, 0.0}, {0.0, 1.0}});
  for (double t : {0.3, 1.0, 2.0}) {
    const BoundaryMatrix E = dynbc::matrix_exp(B, t);
    REQUIRE(std::abs(E(0, 0) - std::exp(-0.25 * t)) < 1e-14 * std::exp(-0.25 * t));
    REQUIRE(std::abs(E(1, 1) - std::exp(t)) < 1e-13 * std::exp(t));
    REQUIRE(std::abs(E(0, 1)) == 0.0);
    REQUIRE(std::abs(E(1, 0)) == 0.0);
  }
}

TEST_CASE("nilpotent generators terminate the series", "[matexp]") {
  const BoundaryMatrix N = BoundaryMatrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  const double t = 3.75;
  const BoundaryMatrix E = dynbc::matrix_exp(N, t);
  REQUIRE(std::abs(E(0, 0) - 1.0) < 1e-15);
  REQUIRE(std::abs(E(0, 1) - t) < 1e-15 * t);
  REQUIRE(std::abs(E(1, 0)) < 1e-15);
  REQUIRE(std::abs(E(1, 1) - 1.0) < 1e-15);
}

TEST_CASE("rotation generators at large norm match the closed form", "[matexp]") {
  // ||tB|| = 100: exercises the scaling stage at the edge of the accuracy
  // contract.
  const double w = 50.0;
  const BoundaryMatrix B = BoundaryMatrix::from_rows({{0.0, w}, {-w, 0.0}});
  const double t = 2.0;
  const BoundaryMatrix E = dynbc::matrix_exp(B, t);
  BoundaryMatrix expect = BoundaryMatrix::from_rows(
      {{std::cos(w * t), std::sin(w * t)}, {-std::sin(w * t), std::cos(w * t)}});
  REQUIRE(mat_rel_diff(E, expect) < 1e-12);
}

TEST_CASE("oscillator generators match the closed form", "[matexp]") {
  const double c3 = 10.0;
  const double w = std::sqrt(c3);
  const BoundaryMatrix B = BoundaryMatrix::from_rows({{0.0, 1.0}, {-c3, 0.0}});
  for (double t : {0.1, 0.77, 2.0}) {
    const BoundaryMatrix E = dynbc::matrix_exp(B, t);
    const BoundaryMatrix expect =
        BoundaryMatrix::from_rows({{std::cos(w * t), std::sin(w * t) / w},
                                   {-w * std::sin(w * t), std::cos(w * t)}});
    REQUIRE(mat_rel_diff(E, expect) < 1e-13);
  }
}

TEST_CASE("random generators agree with the plain Taylor reference", "[matexp]") {
  for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
    const auto vals = testutil::random_vector(4, 500 + seed, -1.0, 1.0);
    const BoundaryMatrix B = BoundaryMatrix::from_rows({{vals[0], vals[1]}, {vals[2], vals[3]}});
    const double t = 1.5;
    REQUIRE(mat_rel_diff(dynbc::matrix_exp(B, t), taylor_reference(B, t)) < 5e-14);
  }
}

TEST_CASE("the flow composes as a group", "[matexp]") {
  const auto vals = testutil::random_vector(4, 606, -2.0, 2.0);
  const BoundaryMatrix B = BoundaryMatrix::from_rows({{vals[0], vals[1]}, {vals[2], vals[3]}});
  const double s = 0.6, t = 1.1;
  const BoundaryMatrix Es = dynbc::matrix_exp(B, s);
  const BoundaryMatrix Et = dynbc::matrix_exp(B, t);
  const BoundaryMatrix Ecomposed = dynbc::detail::mat_mul(Es, Et);
  REQUIRE(mat_rel_diff(Ecomposed, dynbc::matrix_exp(B, s + t)) < 1e-12);

  // Negative time inverts the flow.
  const BoundaryMatrix round = dynbc::detail::mat_mul(Et, dynbc::matrix_exp(B, -t));
  REQUIRE(mat_rel_diff(round, BoundaryMatrix::identity(2)) < 1e-12);
}

TEST_CASE("boundary propagation applies the exponential", "[matexp]") {
  const BoundaryMatrix B = BoundaryMatrix::from_rows({{-0.25, 0.0}, {0.0, 1.0}});
  const BoundaryState v{{1.0, std::sinh(dynbc::pi)}};
  const double t = 0.8;
  const BoundaryState out = dynbc::boundary_propagate(v, t, B);
  REQUIRE(std::abs(out.v[0] - std::exp(-0.25 * t)) < 1e-13);
  REQUIRE(std::abs(out.v[1] - std::exp(t) * std::sinh(dynbc::pi)) < 1e-12 * out.v[1]);
}

TEST_CASE("matrix application is a plain product", "[matexp]") {
  const BoundaryMatrix B = BoundaryMatrix::from_rows({{0.0, 1.0}, {-10.0, 0.0}});
  const BoundaryState v{{2.0, -3.0}};
  const BoundaryState out = dynbc::apply_boundary_matrix(v, B);
  REQUIRE(out.v[0] == -3.0);
  REQUIRE(out.v[1] == -20.0);
}

TEST_CASE("dimension and finiteness contracts hold", "[matexp]") {
  const BoundaryMatrix B = BoundaryMatrix::from_rows({{0.0, 1.0}, {-10.0, 0.0}});
  REQUIRE_THROWS_AS(dynbc::apply_boundary_matrix(BoundaryState{{1.0}}, B), dynbc::ContractError);
  REQUIRE_THROWS_AS(dynbc::boundary_propagate(BoundaryState{{1.0, 2.0, 3.0}}, 1.0, B),
                    dynbc::ContractError);
  BoundaryMatrix bad(2);
  bad(0, 0) = std::nan("");
  REQUIRE_THROWS_AS(dynbc::matrix_exp(bad, 1.0), dynbc::ContractError);
  REQUIRE_THROWS_AS(dynbc::matrix_exp(B, std::numeric_limits<double>::infinity()),
                    dynbc::ContractError);
}
