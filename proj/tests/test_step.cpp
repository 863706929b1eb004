#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "dynbc/exact.hpp"
#include "dynbc/stepping.hpp"
#include "test_util.hpp"

using dynbc::BoundaryMatrix;
using dynbc::BoundaryState;
using dynbc::CoupledState;
using dynbc::DomainParams;
using dynbc::GridFunction;
using dynbc::Problem;
using dynbc::Scheme;
using dynbc::TriangularState;

namespace {

TriangularState random_state(const DomainParams& p, unsigned seed) {
  return TriangularState{testutil::random_grid(p, seed), testutil::random_boundary(seed + 7000)};
}

double state_rel_diff(const TriangularState& a, const TriangularState& b) {
  double num = testutil::max_abs_diff(a.w.values, b.w.values);
  num = std::max(num, testutil::max_abs_diff(a.v.v, b.v.v));
  const double den = std::max({dynbc::max_abs(b.w.values), dynbc::max_abs(b.v.v), 1e-300});
  return num / den;
}

const BoundaryMatrix oscillator = BoundaryMatrix::from_rows({{0.0, 1.0}, {-10.0, 0.0}});

}  // namespace

TEST_CASE("composed and closed-form steps agree", "[step]") {
  const DomainParams p(1.0, dynbc::pi, 256);
  const double tau = 0.05;
  for (const Scheme& scheme :
       {Scheme::lie(), Scheme::strang(), Scheme::weighted(0.3), Scheme::weighted(0.0)}) {
    for (unsigned seed : {1u, 2u, 3u}) {
      const TriangularState s = random_state(p, 900 + seed);
      const TriangularState a = dynbc::step(scheme, s, tau, oscillator, p);
      const TriangularState b = dynbc::step_closed_form(scheme, s, tau, oscillator, p);
      REQUIRE(state_rel_diff(a, b) < 1e-10);
    }
  }
}

TEST_CASE("weighted with theta = 1 is bitwise the Lie step", "[step]") {
  const DomainParams p(1.0, 2.0, 64);
  const TriangularState s = random_state(p, 910);
  const double tau = 0.125;
  const TriangularState lie = dynbc::step(Scheme::lie(), s, tau, oscillator, p);
  const TriangularState wgh = dynbc::step(Scheme::weighted(1.0), s, tau, oscillator, p);
  for (std::size_t j = 0; j < lie.w.size(); ++j) REQUIRE(wgh.w.values[j] == lie.w.values[j]);
  for (std::size_t i = 0; i < 2; ++i) REQUIRE(wgh.v.v[i] == lie.v.v[i]);
}

TEST_CASE("weighted steps interpolate the two orderings exactly", "[step]") {
  const DomainParams p(1.0, 1.0, 64);
  const TriangularState s = random_state(p, 920);
  const double tau = 0.1;
  const double theta = 0.3;

  const TriangularState forward =
      dynbc::apply_T1(dynbc::apply_T2(dynbc::apply_T3(s, tau, oscillator), tau, oscillator, p),
                      tau, p);
  const TriangularState reverse =
      dynbc::apply_T3(dynbc::apply_T2(dynbc::apply_T1(s, tau, p), tau, oscillator, p), tau,
                      oscillator);
  const TriangularState wgh = dynbc::step(Scheme::weighted(theta), s, tau, oscillator, p);
  for (std::size_t j = 0; j < wgh.w.size(); ++j) {
    REQUIRE(wgh.w.values[j] ==
            theta * forward.w.values[j] + (1.0 - theta) * reverse.w.values[j]);
  }
  // theta = 0 is exactly the reverse ordering.
  const TriangularState rev = dynbc::step(Scheme::weighted(0.0), s, tau, oscillator, p);
  for (std::size_t j = 0; j < rev.w.size(); ++j) REQUIRE(rev.w.values[j] == reverse.w.values[j]);
}

TEST_CASE("the coupling sub-flow is additive in time", "[step]") {
  const DomainParams p(1.0, 1.0, 32);
  const TriangularState s = random_state(p, 930);
  const TriangularState both =
      dynbc::apply_T2(dynbc::apply_T2(s, 0.03, oscillator, p), 0.07, oscillator, p);
  const TriangularState once = dynbc::apply_T2(s, 0.1, oscillator, p);
  REQUIRE(state_rel_diff(both, once) < 1e-12);
}

TEST_CASE("trivial generators freeze the state", "[step]") {
  const DomainParams p(1.0, 1.0, 32);
  const BoundaryMatrix zero(2);
  TriangularState s{GridFunction{std::vector<double>(p.interior_points(), 0.0)},
                    testutil::random_boundary(940)};
  for (const Scheme& scheme : {Scheme::lie(), Scheme::strang(), Scheme::weighted(0.4)}) {
    const TriangularState out = dynbc::step(scheme, s, 0.2, zero, p);
    for (double w : out.w.values) REQUIRE(w == 0.0);
    REQUIRE(out.v.v[0] == s.v.v[0]);
    REQUIRE(out.v.v[1] == s.v.v[1]);
  }
}

TEST_CASE("the boundary block is exact for every scheme", "[step]") {
  const Problem prob = dynbc::example2_problem(16);
  const std::size_t nt = 50;
  for (const Scheme& scheme :
       {Scheme::lie(), Scheme::strang(), Scheme::weighted(0.3), Scheme::naive_lie()}) {
    const CoupledState terminal = dynbc::run_terminal(prob, scheme, nt);
    const BoundaryState expect = dynbc::boundary_propagate(prob.v0, prob.t_max, prob.B);
    REQUIRE(std::abs(terminal.v.v[0] - expect.v[0]) <= 1e-10 * dynbc::max_abs(expect.v));
    REQUIRE(std::abs(terminal.v.v[1] - expect.v[1]) <= 1e-10 * dynbc::max_abs(expect.v));
  }
}

TEST_CASE("equilibria are preserved over many steps", "[step]") {
  // Static boundary data with its harmonic extension is a steady state.
  const DomainParams p(1.0, 1.0, 64);
  const BoundaryMatrix zero(2);
  const BoundaryState v{{2.0, -1.0}};
  const Problem prob(p, zero, dynbc::dirichlet_lift(v, p), v, 1.0);
  for (const Scheme& scheme :
       {Scheme::lie(), Scheme::strang(), Scheme::weighted(0.5), Scheme::naive_lie()}) {
    const CoupledState terminal = dynbc::run_terminal(prob, scheme, 100);
    REQUIRE(testutil::max_abs_diff(terminal.u.values, prob.u0.values) <= 1e-10);
    REQUIRE(terminal.v.v[0] == v.v[0]);
    REQUIRE(terminal.v.v[1] == v.v[1]);
  }
}

TEST_CASE("the naive step freezes boundary values before the heat solve", "[step]") {
  const DomainParams p(1.0, 1.0, 64);
  const double tau = 0.05;

  // Against the definition, assembled from the elementary operations.
  const CoupledState s{testutil::random_grid(p, 950), testutil::random_boundary(951)};
  const CoupledState out = dynbc::step_naive(s, tau, oscillator, p);
  const BoundaryState v1 = dynbc::boundary_propagate(s.v, tau, oscillator);
  const GridFunction lift = dynbc::dirichlet_lift(v1, p);
  GridFunction residue = s.u;
  for (std::size_t j = 0; j < residue.size(); ++j) residue.values[j] -= lift.values[j];
  GridFunction expect = dynbc::heat_propagate(residue, tau, p);
  for (std::size_t j = 0; j < expect.size(); ++j) expect.values[j] += lift.values[j];
  REQUIRE(testutil::max_abs_diff(out.u.values, expect.values) == 0.0);
  REQUIRE(out.v.v[0] == v1.v[0]);
  REQUIRE(out.v.v[1] == v1.v[1]);
}

TEST_CASE("runs produce full trajectories with exact initial state", "[step]") {
  const Problem prob = dynbc::example2_problem(32, 1.0);
  for (const Scheme& scheme : {Scheme::lie(), Scheme::naive_lie()}) {
    const auto traj = dynbc::run(prob, scheme, 8);
    REQUIRE(traj.size() == 9);
    REQUIRE(testutil::max_abs_diff(traj[0].u.values, prob.u0.values) == 0.0);
    REQUIRE(traj[0].v.v == prob.v0.v);
    const CoupledState terminal = dynbc::run_terminal(prob, scheme, 8);
    REQUIRE(testutil::max_abs_diff(traj.back().u.values, terminal.u.values) == 0.0);
    REQUIRE(traj.back().v.v == terminal.v.v);
  }
}

TEST_CASE("runs are linear in the initial state", "[step]") {
  const DomainParams p(1.0, 1.0, 64);
  const GridFunction u = testutil::random_grid(p, 960);
  const BoundaryState v = testutil::random_boundary(961);
  const GridFunction zero_u{std::vector<double>(p.interior_points(), 0.0)};
  const BoundaryState zero_v{{0.0, 0.0}};
  const double t_max = 0.5;
  const std::size_t nt = 5;

  const Problem full(p, oscillator, u, v, t_max);
  const Problem interior_only(p, oscillator, u, zero_v, t_max);
  const Problem boundary_only(p, oscillator, zero_u, v, t_max);
  for (const Scheme& scheme : {Scheme::lie(), Scheme::strang(), Scheme::weighted(0.3)}) {
    const CoupledState a = dynbc::run_terminal(full, scheme, nt);
    const CoupledState b = dynbc::run_terminal(interior_only, scheme, nt);
    const CoupledState c = dynbc::run_terminal(boundary_only, scheme, nt);
    const double scale = std::max(1.0, dynbc::max_abs(a.u.values));
    for (std::size_t j = 0; j < a.u.size(); ++j) {
      REQUIRE(std::abs(b.u.values[j] + c.u.values[j] - a.u.values[j]) <= 1e-12 * scale);
    }
    for (std::size_t i = 0; i < 2; ++i) {
      REQUIRE(std::abs(b.v.v[i] + c.v.v[i] - a.v.v[i]) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("scheme and argument contracts hold", "[step]") {
  const DomainParams p(1.0, 1.0, 8);
  const TriangularState s = random_state(p, 970);
  REQUIRE_THROWS_AS(dynbc::step(Scheme::lie(), s, 0.0, oscillator, p), dynbc::ContractError);
  REQUIRE_THROWS_AS(dynbc::step(Scheme::lie(), s, -0.1, oscillator, p), dynbc::ContractError);
  REQUIRE_THROWS_AS(dynbc::step(Scheme::naive_lie(), s, 0.1, oscillator, p),
                    dynbc::ContractError);
  REQUIRE_THROWS_AS(dynbc::step_closed_form(Scheme::naive_lie(), s, 0.1, oscillator, p),
                    dynbc::ContractError);
  REQUIRE_THROWS_AS(Scheme::weighted(1.5), dynbc::ContractError);
  REQUIRE_THROWS_AS(Scheme::weighted(-0.1), dynbc::ContractError);
}
