#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lpres/operators.hpp"
#include "lpres/report.hpp"
#include "lpres/resolvent.hpp"
#include "lpres/sampler.hpp"
#include "lpres/space.hpp"

namespace lpres {

/// Test-only overrides; the runner reads LPRES_TEST_M_OVERRIDE into this so
/// failure-injection tests can corrupt a constant deliberately.
struct HarnessHooks {
  std::optional<double> m_override;
};

/// phi(x,y) + phi(y,x) = 2<x-y, Jx-Jy>; margin is the negated absolute
/// residual relative to scale.
InequalityReport check_phi_identity(const SpaceDescriptor& space,
                                    const SamplerConfig& sampler);

/// mu_hat = sup ||x-y||^2 / phi(x,y) over sampled pairs (the sharp constant
/// of the lower Bregman bound).  Requires the theorem regime p <= 2.
InequalityReport estimate_mu(const SpaceDescriptor& space, const SamplerConfig& sampler);

/// (1/(2 mu_hat)) ||x-y||^2 <= <x-y, Jx-Jy> on fresh samples.
InequalityReport check_strong_monotonicity(const SpaceDescriptor& space,
                                           const SamplerConfig& sampler);

/// <j(u), v> <= ||u+v|| - ||u|| with j(u) = Ju/||u||.
InequalityReport check_support_inequality(const SpaceDescriptor& space,
                                          const SamplerConfig& sampler);

/// ||Jx-Jy|| <= 2 max(||x||,||y||) rho(2t)/t, t = ||x/||x|| - y/||y||||;
/// pass/fail against the analytic rho ceiling.
InequalityReport check_keylem1(const SpaceDescriptor& space,
                               const SamplerConfig& sampler);

/// ||x/||x|| - y/||y|||| <= 2||x-y|| / max(||x||,||y||).
InequalityReport check_normalization_inequality(const SpaceDescriptor& space,
                                                const SamplerConfig& sampler);

/// ||Jx-Jy|| <= M ||x-y||^{q-1} max(||x||,||y||)^{2-q} with M = 2^{2q}/q;
/// covers the degenerate pairs x=y, x=0, y=0 as well.
InequalityReport check_theorem_main1(const SpaceDescriptor& space,
                                     const SamplerConfig& sampler,
                                     const HarnessHooks& hooks = {});

/// ||Tx-Ty|| <= L ||x-y||^{q-1} with T = J_r and L = mu * M * R^{2-q},
/// mu = 2 * mu_hat.
InequalityReport check_holder_T(const SpaceDescriptor& space,
                                const MonotoneOperatorSpec& op, double r,
                                const SamplerConfig& sampler,
                                const HarnessHooks& hooks = {});

struct HolderFitData {
  HolderFit fit;
  // one row per pair: {base_point_id, log10 dist, log10 image dist, bound value}
  std::vector<std::array<double, 4>> points;
  double bound_slope = 0.0;      // q - 1
  double bound_intercept = 0.0;  // log10 L
  double worst_excess = 0.0;     // max over points of (log image - bound); <= 0 when under the line
};

enum class MapUnderTest { duality, resolvent };

/// Pairs at log-spaced distances around ball base points; least-squares fit
/// of log image distance vs log distance, plus the bound-line excess.
HolderFitData fit_holder_exponent(MapUnderTest map, const SpaceDescriptor& space,
                                  const MonotoneOperatorSpec& op, double r,
                                  const SamplerConfig& sampler);

/// Projected-gradient ascent on the violation ratio of a registered
/// inequality; candidate violations are re-verified in extended precision
/// before being reported.
InequalityReport adversarial_search(const std::string& inequality_id,
                                    const SpaceDescriptor& space, int restarts,
                                    int steps, const SamplerConfig& sampler);

const std::vector<std::string>& registered_inequalities();

}  // namespace lpres
