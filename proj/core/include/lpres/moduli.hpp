#pragma once

#include <vector>

#include "lpres/sampler.hpp"
#include "lpres/space.hpp"

namespace lpres {

/// Analytic ceiling for the modulus of smoothness: sqrt(1+tau^2)-1 at p = 2,
/// tau^p / p for 1 < p < 2.  Pass/fail checks use this; empirical estimates
/// are one-sided and reported for context only.
double rho_ceiling(const SpaceDescriptor& space, double tau);

/// Hilbert closed form for the modulus of convexity, 1 - sqrt(1 - eps^2/4).
double delta_hilbert(double eps);

/// Lower estimate of rho_E(tau): random unit pairs refined by projected
/// coordinate ascent (50 sweeps, step 1e-2, shrink 0.5).
double modulus_smoothness_estimate(const SpaceDescriptor& space, double tau,
                                   const SamplerConfig& sampler);

/// Upper estimate of delta_E(eps) over feasible unit pairs at distance eps.
double modulus_convexity_estimate(const SpaceDescriptor& space, double eps,
                                  const SamplerConfig& sampler);

/// K_est = max over the grid of estimate(tau) / tau^{q_smooth}.
double smoothness_constant_estimate(const SpaceDescriptor& space,
                                    const std::vector<double>& tau_grid,
                                    const SamplerConfig& sampler);

}  // namespace lpres
