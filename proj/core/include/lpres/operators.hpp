#pragma once

#include <limits>
#include <variant>
#include <vector>

#include "lpres/report.hpp"
#include "lpres/sampler.hpp"
#include "lpres/space.hpp"

namespace lpres {

struct MonotoneOperatorSpec;

struct ZeroOp {};

/// A z == c (a constant dual vector); trivially monotone.
struct ConstantOp {
  std::vector<double> c;
};

/// A z = G z in coordinates; (G + G^T)/2 must be PSD up to -1e-10.
struct LinearPsdOp {
  std::vector<std::vector<double>> matrix;  // row-major n x n
};

/// A z = lambda * J z.
struct ScaledDualityOp {
  double lambda = 0.0;
};

/// A z = lambda * (z - b), read in dual coordinates.
struct GradQuadraticOp {
  std::vector<double> b;
  double lambda = 0.0;
};

/// A z = gamma * sign(z) coordinatewise, a selection of the l1 subgradient
/// with sign(0) := 0.
struct SubgradL1Op {
  double gamma = 0.0;
};

struct SumOp {
  std::vector<MonotoneOperatorSpec> members;
};

using OperatorVariant =
    std::variant<ZeroOp, ConstantOp, LinearPsdOp, ScaledDualityOp, GradQuadraticOp,
                 SubgradL1Op, SumOp>;

/// Declarative catalog entry for A: E -> E*.  `domain_radius` is the radius
/// of the domain ball C (infinity means C = E).
struct MonotoneOperatorSpec {
  OperatorVariant variant = ZeroOp{};
  double domain_radius = std::numeric_limits<double>::infinity();

  /// Validates scalar signs, matrix shape, and the PSD certificate for
  /// linear_psd members.  Throws std::invalid_argument on violation.
  void validate(const SpaceDescriptor& space) const;
};

struct OperatorEvaluation {
  PrimalVector input;
  DualVector output;
  bool is_selection = false;
};

/// Evaluates A z.  Throws std::domain_error if z lies outside the domain ball.
OperatorEvaluation eval(const MonotoneOperatorSpec& op, const PrimalVector& z);

/// Sampled certificate of <x - y, Ax - Ay> >= 0 over pairs in the domain.
InequalityReport monotonicity_certificate(const MonotoneOperatorSpec& op,
                                          const SpaceDescriptor& space,
                                          const SamplerConfig& sampler);

// --- traits consumed by the resolvent solver ---

/// True when the operator has no active subgradient selection (l1 weight 0).
bool is_smooth(const MonotoneOperatorSpec& op);

/// Total l1 weight (sum of subgrad_l1 gammas across the spec tree).
double l1_weight(const MonotoneOperatorSpec& op);

/// Evaluation with all subgrad_l1 members dropped.
DualVector eval_smooth_part(const MonotoneOperatorSpec& op, const PrimalVector& z);

/// True when the smooth part is a gradient field (every linear_psd member is
/// symmetric); required for the descent route.
bool has_potential_smooth_part(const MonotoneOperatorSpec& op);

/// Accumulates the Jacobian of the smooth part at z into `jac` (row-major,
/// n x n, pre-sized and zeroed by the caller).
void accumulate_smooth_jacobian(const MonotoneOperatorSpec& op, const PrimalVector& z,
                                std::vector<double>& jac);

/// Smallest eigenvalue of the symmetric part of a matrix (cyclic Jacobi).
double min_symmetric_eigenvalue(const std::vector<std::vector<double>>& m);

}  // namespace lpres
