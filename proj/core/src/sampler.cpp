#include "lpres/sampler.hpp"

#include <cmath>

namespace lpres {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task_index) {
  // splitmix64 on seed ^ golden-ratio-scrambled task index.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (task_index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

PrimalVector Sampler::unit_vector() {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> c(space_.dim);
  double nrm = 0.0;
  while (nrm == 0.0) {
    for (double& x : c) x = gauss(rng_);
    PrimalVector v(c, space_);
    nrm = norm(v);
    if (nrm > 0.0) {
      return (1.0 / nrm) * v;
    }
  }
  return zero_primal(space_);  // unreachable
}

PrimalVector Sampler::ball_point(double radius) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  PrimalVector dir = unit_vector();
  double r = radius * std::pow(unif(rng_), 1.0 / static_cast<double>(space_.dim));
  return r * dir;
}

double Sampler::uniform(double lo, double hi) {
  std::uniform_real_distribution<double> unif(lo, hi);
  return unif(rng_);
}

}  // namespace lpres
