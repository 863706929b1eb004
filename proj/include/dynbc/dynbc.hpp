#pragma once

// Operator-splitting schemes for one-dimensional heat flow coupled to
// dynamical (ODE-driven) Dirichlet boundary values.  The interior unknown
// lives on a uniform grid and moves under the sine-spectral heat semigroup;
// the boundary pair moves under a 2x2 matrix exponential; the splitting
// schemes alternate the two flows in triangular coordinates w = u - D0 v.

#include "dynbc/commands.hpp"
#include "dynbc/config.hpp"
#include "dynbc/convergence.hpp"
#include "dynbc/csv.hpp"
#include "dynbc/dst.hpp"
#include "dynbc/errors.hpp"
#include "dynbc/exact.hpp"
#include "dynbc/heat.hpp"
#include "dynbc/lift.hpp"
#include "dynbc/matexp.hpp"
#include "dynbc/oracle.hpp"
#include "dynbc/problem.hpp"
#include "dynbc/scheme.hpp"
#include "dynbc/state.hpp"
#include "dynbc/stepping.hpp"
#include "dynbc/types.hpp"
