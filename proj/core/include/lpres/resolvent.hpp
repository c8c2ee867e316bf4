#pragma once

#include <stdexcept>

#include "lpres/operators.hpp"
#include "lpres/space.hpp"

namespace lpres {

enum class SolveMethod { closed_form, newton, descent };

const char* to_string(SolveMethod m);

/// One resolvent solve: find z with Jz + r A z = Jx, i.e. z = (J + rA)^{-1} Jx.
struct ResolventProblem {
  SpaceDescriptor space;
  MonotoneOperatorSpec op;
  double r = 1.0;
  PrimalVector x;
  double tol = 1e-10;   // dual-norm residual target
  int max_iter = 200;
};

struct ResolventSolution {
  PrimalVector z;
  double residual = 0.0;
  int iterations = 0;
  SolveMethod method = SolveMethod::closed_form;
};

struct SolverError : std::runtime_error {
  double best_residual;
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), best_residual(residual) {}
};

/// Dual-norm residual of the inclusion at z.  At kink coordinates (z_i = 0)
/// the l1 subgradient is chosen inside [-gamma, gamma] to minimize the
/// residual, which is the optimality residual of the inclusion.
double resolvent_residual(const ResolventProblem& problem, const PrimalVector& z);

/// Route selection: closed form where available, damped Newton for smooth
/// operators, proximal descent when a subgradient selection is involved.
ResolventSolution solve_resolvent(const ResolventProblem& problem);

/// pairing(Tx - Ty, Jx - Jy) - pairing(Tx - Ty, JTx - JTy) with T = J_r;
/// nonnegative for resolvents of monotone operators.
double fnt_margin(const SpaceDescriptor& space, const MonotoneOperatorSpec& op,
                  double r, const PrimalVector& x, const PrimalVector& y,
                  double tol = 1e-10);

}  // namespace lpres
