#pragma once

#include <cstdint>
#include <random>

#include "lpres/space.hpp"

namespace lpres {

/// Deterministic sampling plan.  `radius` is the sampling ball radius R;
/// `scale_decades` is the log10 range of pair distances used by the
/// exponent-fit machinery.
struct SamplerConfig {
  std::uint64_t seed = 0;
  std::size_t count = 10000;
  double radius = 1.0;
  double scale_decades_lo = -3.0;
  double scale_decades_hi = 0.0;
};

/// Seed mixing for per-task substreams: identical (seed, task) always yields
/// the same stream regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task_index);

class Sampler {
 public:
  Sampler(const SpaceDescriptor& space, std::uint64_t seed)
      : space_(space), rng_(derive_seed(seed, 0)) {}

  /// Gaussian direction normalized onto the unit l_p sphere.
  PrimalVector unit_vector();

  /// Point in the closed ball of the given radius (radial density u^{1/n}).
  PrimalVector ball_point(double radius);

  double uniform(double lo, double hi);

  std::mt19937_64& rng() { return rng_; }
  const SpaceDescriptor& space() const { return space_; }

 private:
  SpaceDescriptor space_;
  std::mt19937_64 rng_;
};

}  // namespace lpres
