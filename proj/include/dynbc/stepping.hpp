#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "dynbc/errors.hpp"
#include "dynbc/heat.hpp"
#include "dynbc/lift.hpp"
#include "dynbc/matexp.hpp"
#include "dynbc/problem.hpp"
#include "dynbc/scheme.hpp"
#include "dynbc/state.hpp"
#include "dynbc/types.hpp"

namespace dynbc {

/// Interior sub-flow: w evolves under the homogeneous Dirichlet heat
/// semigroup, v is frozen.
inline TriangularState apply_T1(const TriangularState& s, double t, const DomainParams& p) {
  return TriangularState{heat_propagate(s.w, t, p), s.v};
}

/// Coupling sub-flow, a shear: w picks up -t * D0(B v), v is frozen.
inline TriangularState apply_T2(const TriangularState& s, double t, const BoundaryMatrix& B,
                                const DomainParams& p) {
  detail::require(std::isfinite(t), "apply_T2: t must be finite");
  const GridFunction drift = dirichlet_lift(apply_boundary_matrix(s.v, B), p);
  TriangularState out = s;
  for (std::size_t j = 0; j < out.w.size(); ++j) out.w.values[j] -= t * drift.values[j];
  return out;
}

/// Boundary sub-flow: v evolves under exp(t*B), w is frozen.
inline TriangularState apply_T3(const TriangularState& s, double t, const BoundaryMatrix& B) {
  return TriangularState{s.w, boundary_propagate(s.v, t, B)};
}

namespace detail {

inline TriangularState step_ordered(const TriangularState& s, double tau, const BoundaryMatrix& B,
                                    const DomainParams& p) {
  // T1(tau) T2(tau) T3(tau) as an operator product: boundary first.
  return apply_T1(apply_T2(apply_T3(s, tau, B), tau, B, p), tau, p);
}

inline TriangularState step_reversed(const TriangularState& s, double tau, const BoundaryMatrix& B,
                                     const DomainParams& p) {
  // T3(tau) T2(tau) T1(tau): interior first.
  return apply_T3(apply_T2(apply_T1(s, tau, p), tau, B, p), tau, B);
}

/// Coupling block V(tau) of the one-step operator, applied to boundary data:
///   Lie       -tau * T0(tau) D0 B S(tau)
///   Strang    -tau * T0(tau/2) D0 B S(tau/2)
///   Weighted  -tau * (theta * T0(tau) D0 B S(tau) + (1-theta) * D0 B)
inline GridFunction coupling_block(const Scheme& scheme, double tau, const BoundaryState& v,
                                   const BoundaryMatrix& B, const DomainParams& p) {
  auto smoothed = [&](double dt) {
    const BoundaryState moved = boundary_propagate(v, dt, B);
    const GridFunction lifted = dirichlet_lift(apply_boundary_matrix(moved, B), p);
    return heat_propagate(lifted, dt, p);
  };
  GridFunction out;
  switch (scheme.kind()) {
    case Scheme::Kind::Lie:
      out = smoothed(tau);
      break;
    case Scheme::Kind::Strang:
      out = smoothed(0.5 * tau);
      break;
    case Scheme::Kind::Weighted: {
      const double theta = scheme.theta();
      if (theta == 1.0) {
        out = smoothed(tau);
      } else if (theta == 0.0) {
        out = dirichlet_lift(apply_boundary_matrix(v, B), p);
      } else {
        out = smoothed(tau);
        const GridFunction plain = dirichlet_lift(apply_boundary_matrix(v, B), p);
        for (std::size_t j = 0; j < out.size(); ++j)
          out.values[j] = theta * out.values[j] + (1.0 - theta) * plain.values[j];
      }
      break;
    }
    case Scheme::Kind::NaiveLie:
      throw ContractError("coupling_block: NaiveLie has no triangular one-step operator");
  }
  for (double& x : out.values) x *= -tau;
  return out;
}

}  // namespace detail

/// One splitting step in triangular coordinates, evaluated as the literal
/// composition of sub-flows.
inline TriangularState step(const Scheme& scheme, const TriangularState& s, double tau,
                            const BoundaryMatrix& B, const DomainParams& p) {
  detail::require(std::isfinite(tau) && tau > 0.0, "step: tau must be positive");
  switch (scheme.kind()) {
    case Scheme::Kind::Lie:
      return detail::step_ordered(s, tau, B, p);
    case Scheme::Kind::Strang: {
      TriangularState r = apply_T1(s, 0.5 * tau, p);
      r = apply_T3(r, 0.5 * tau, B);
      r = apply_T2(r, tau, B, p);
      r = apply_T3(r, 0.5 * tau, B);
      return apply_T1(r, 0.5 * tau, p);
    }
    case Scheme::Kind::Weighted: {
      const double theta = scheme.theta();
      if (theta == 1.0) return detail::step_ordered(s, tau, B, p);
      if (theta == 0.0) return detail::step_reversed(s, tau, B, p);
      const TriangularState a = detail::step_ordered(s, tau, B, p);
      const TriangularState b = detail::step_reversed(s, tau, B, p);
      TriangularState out = a;
      for (std::size_t j = 0; j < out.w.size(); ++j)
        out.w.values[j] = theta * a.w.values[j] + (1.0 - theta) * b.w.values[j];
      for (std::size_t i = 0; i < out.v.size(); ++i)
        out.v.v[i] = theta * a.v.v[i] + (1.0 - theta) * b.v.v[i];
      return out;
    }
    case Scheme::Kind::NaiveLie:
      throw ContractError("step: NaiveLie advances in physical coordinates; use step_naive");
  }
  throw ContractError("step: unknown scheme");
}

/// Same step through the closed form of the one-step operator: the interior
/// block is the heat semigroup, the boundary block exp(tau*B), and the
/// coupling block V(tau).  Agrees with step() up to rounding.
inline TriangularState step_closed_form(const Scheme& scheme, const TriangularState& s, double tau,
                                        const BoundaryMatrix& B, const DomainParams& p) {
  detail::require(std::isfinite(tau) && tau > 0.0, "step_closed_form: tau must be positive");
  detail::require(scheme.kind() != Scheme::Kind::NaiveLie,
                  "step_closed_form: NaiveLie has no triangular one-step operator");
  TriangularState out{heat_propagate(s.w, tau, p), boundary_propagate(s.v, tau, B)};
  const GridFunction coupling = detail::coupling_block(scheme, tau, s.v, B, p);
  for (std::size_t j = 0; j < out.w.size(); ++j) out.w.values[j] += coupling.values[j];
  return out;
}

/// Frozen-boundary iteration in physical coordinates: advance the boundary
/// first, then solve the heat flow holding the fresh boundary values fixed
/// over the step.
inline CoupledState step_naive(const CoupledState& s, double tau, const BoundaryMatrix& B,
                               const DomainParams& p) {
  detail::require(std::isfinite(tau) && tau > 0.0, "step_naive: tau must be positive");
  const BoundaryState v1 = boundary_propagate(s.v, tau, B);
  const GridFunction lift = dirichlet_lift(v1, p);
  GridFunction residue = s.u;
  for (std::size_t j = 0; j < residue.size(); ++j) residue.values[j] -= lift.values[j];
  GridFunction u1 = heat_propagate(residue, tau, p);
  for (std::size_t j = 0; j < u1.size(); ++j) u1.values[j] += lift.values[j];
  return CoupledState{u1, v1};
}

/// Full trajectory: nt uniform steps of t_max/nt.  Element k is the state at
/// t = k*tau in physical coordinates.
inline std::vector<CoupledState> run(const Problem& prob, const Scheme& scheme, std::size_t nt) {
  detail::require(nt >= 1, "run: nt must be at least 1");
  const double tau = prob.t_max / static_cast<double>(nt);
  std::vector<CoupledState> out;
  out.reserve(nt + 1);
  out.push_back(CoupledState{prob.u0, prob.v0});
  if (scheme.kind() == Scheme::Kind::NaiveLie) {
    CoupledState s = out.front();
    for (std::size_t k = 0; k < nt; ++k) {
      s = step_naive(s, tau, prob.B, prob.params);
      out.push_back(s);
    }
  } else {
    TriangularState s = to_triangular(out.front(), prob.params);
    for (std::size_t k = 0; k < nt; ++k) {
      s = step(scheme, s, tau, prob.B, prob.params);
      out.push_back(from_triangular(s, prob.params));
    }
  }
  return out;
}

/// Terminal state only; avoids storing trajectories during large sweeps.
inline CoupledState run_terminal(const Problem& prob, const Scheme& scheme, std::size_t nt) {
  detail::require(nt >= 1, "run_terminal: nt must be at least 1");
  const double tau = prob.t_max / static_cast<double>(nt);
  if (scheme.kind() == Scheme::Kind::NaiveLie) {
    CoupledState s{prob.u0, prob.v0};
    for (std::size_t k = 0; k < nt; ++k) s = step_naive(s, tau, prob.B, prob.params);
    return s;
  }
  TriangularState s = to_triangular(CoupledState{prob.u0, prob.v0}, prob.params);
  for (std::size_t k = 0; k < nt; ++k) s = step(scheme, s, tau, prob.B, prob.params);
  return from_triangular(s, prob.params);
}

/// Coupling block of the n-th operator power, applied to boundary data y:
///   V_n(tau) = sum_{j=0}^{n-1} T0((n-1-j)*tau) V(tau) S(j*tau),  tau = t/n.
/// As n grows this converges to minus the convolution of the heat semigroup
/// with the lifted boundary flow.
inline GridFunction apply_Vn(const Scheme& scheme, std::size_t n, double t, const BoundaryState& y,
                             const BoundaryMatrix& B, const DomainParams& p) {
  detail::require(n >= 1, "apply_Vn: n must be at least 1");
  detail::require(std::isfinite(t) && t > 0.0, "apply_Vn: t must be positive");
  detail::require(scheme.kind() != Scheme::Kind::NaiveLie,
                  "apply_Vn: NaiveLie has no triangular one-step operator");
  const double tau = t / static_cast<double>(n);
  GridFunction acc{std::vector<double>(p.interior_points(), 0.0)};
  for (std::size_t j = 0; j < n; ++j) {
    const BoundaryState yj = boundary_propagate(y, static_cast<double>(j) * tau, B);
    GridFunction g = detail::coupling_block(scheme, tau, yj, B, p);
    g = heat_propagate(g, static_cast<double>(n - 1 - j) * tau, p);
    for (std::size_t i = 0; i < acc.size(); ++i) acc.values[i] += g.values[i];
  }
  return acc;
}

}  // namespace dynbc
