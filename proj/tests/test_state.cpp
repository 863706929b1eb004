#include <catch2/catch_amalgamated.hpp>

#include "dynbc/state.hpp"
#include "test_util.hpp"

using dynbc::BoundaryState;
using dynbc::CoupledState;
using dynbc::DomainParams;
using dynbc::GridFunction;
using dynbc::TriangularState;

TEST_CASE("zero boundary data leaves the interior untouched", "[state]") {
  const DomainParams p(1.0, 1.0, 32);
  const CoupledState s{testutil::random_grid(p, 801), BoundaryState{{0.0, 0.0}}};
  const TriangularState t = dynbc::to_triangular(s, p);
  for (std::size_t j = 0; j < t.w.size(); ++j) REQUIRE(t.w.values[j] == s.u.values[j]);
}

TEST_CASE("a lifted state transforms to zero", "[state]") {
  const DomainParams p(1.0, 2.0, 64);
  const BoundaryState v = testutil::random_boundary(802);
  const CoupledState s{dynbc::dirichlet_lift(v, p), v};
  const TriangularState t = dynbc::to_triangular(s, p);
  for (double w : t.w.values) REQUIRE(w == 0.0);
}

TEST_CASE("the triangular transform round-trips", "[state]") {
  const DomainParams p(1.0, dynbc::pi, 128);
  const CoupledState s{testutil::random_grid(p, 803), testutil::random_boundary(804)};
  const CoupledState back = dynbc::from_triangular(dynbc::to_triangular(s, p), p);
  const double scale = std::max(1.0, dynbc::max_abs(s.u.values));
  REQUIRE(testutil::max_abs_diff(back.u.values, s.u.values) <= 1e-14 * scale);
  REQUIRE(back.v.v[0] == s.v.v[0]);
  REQUIRE(back.v.v[1] == s.v.v[1]);
}

TEST_CASE("transform size contracts hold", "[state]") {
  const DomainParams p(1.0, 1.0, 8);
  const CoupledState bad{GridFunction{{1.0, 2.0}}, BoundaryState{{0.0, 0.0}}};
  REQUIRE_THROWS_AS(dynbc::to_triangular(bad, p), dynbc::ContractError);
}
