#include "lpres/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpres {

namespace {

constexpr int kAscentSweeps = 50;
constexpr double kAscentStep = 1e-2;
constexpr double kAscentShrink = 0.5;

PrimalVector normalized(const PrimalVector& v) {
  double n = norm(v);
  if (n == 0.0) {
    throw std::domain_error("cannot normalize the zero vector");
  }
  return (1.0 / n) * v;
}

double smoothness_objective(const PrimalVector& x, const PrimalVector& y, double tau) {
  return 0.5 * (norm(x + tau * y) + norm(x - tau * y)) - 1.0;
}

// Coordinate ascent over a pair of unit vectors, re-projecting onto the
// sphere after each trial move.
double ascend_smoothness(PrimalVector x, PrimalVector y, double tau) {
  double best = smoothness_objective(x, y, tau);
  double step = kAscentStep;
  for (int sweep = 0; sweep < kAscentSweeps; ++sweep) {
    bool improved = false;
    for (PrimalVector* v : {&x, &y}) {
      for (std::size_t i = 0; i < v->dim(); ++i) {
        for (double dir : {step, -step}) {
          PrimalVector trial = *v;
          trial[i] += dir;
          if (norm(trial) == 0.0) continue;
          trial = normalized(trial);
          std::swap(*v, trial);
          double val = smoothness_objective(x, y, tau);
          if (val > best) {
            best = val;
            improved = true;
          } else {
            std::swap(*v, trial);  // revert
          }
        }
      }
    }
    if (!improved) step *= kAscentShrink;
  }
  return best;
}

// Find t in [lo, hi] with ||x - y(t)|| = eps, y(t) = normalize(x + t(u - x)).
// The distance is 0 at t = 0 and increases toward ||x - u||; bisection is on
// the sign of (distance - eps).
bool bisect_feasible(const PrimalVector& x, const PrimalVector& u, double eps,
                     PrimalVector* out) {
  auto dist_at = [&](double t) {
    PrimalVector v = x + t * (u - x);
    if (norm(v) == 0.0) return -1.0;
    return norm(x - normalized(v));
  };
  double lo = 0.0, hi = 1.0;
  if (dist_at(hi) < eps) return false;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    double d = dist_at(mid);
    if (d < eps) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  PrimalVector v = x + hi * (u - x);
  if (norm(v) == 0.0) return false;
  PrimalVector y = normalized(v);
  if (std::abs(norm(x - y) - eps) > 1e-9) return false;
  *out = y;
  return true;
}

double convexity_objective(const PrimalVector& x, const PrimalVector& y) {
  return 1.0 - 0.5 * norm(x + y);
}

}  // namespace

double rho_ceiling(const SpaceDescriptor& space, double tau) {
  if (space.p == 2.0) {
    return std::sqrt(1.0 + tau * tau) - 1.0;
  }
  return std::pow(tau, space.p) / space.p;
}

double delta_hilbert(double eps) {
  return 1.0 - std::sqrt(1.0 - eps * eps / 4.0);
}

double modulus_smoothness_estimate(const SpaceDescriptor& space, double tau,
                                   const SamplerConfig& sampler) {
  if (!(tau > 0.0)) {
    throw std::invalid_argument("tau must be positive");
  }
  Sampler gen(space, derive_seed(sampler.seed, 0x726f77));
  double best = 0.0;
  std::size_t restarts = std::max<std::size_t>(1, sampler.count / 100);
  for (std::size_t k = 0; k < restarts; ++k) {
    PrimalVector x = gen.unit_vector();
    PrimalVector y = gen.unit_vector();
    best = std::max(best, ascend_smoothness(x, y, tau));
  }
  return std::max(best, 0.0);
}

double modulus_convexity_estimate(const SpaceDescriptor& space, double eps,
                                  const SamplerConfig& sampler) {
  if (!(eps > 0.0) || eps > 2.0) {
    throw std::invalid_argument("eps must lie in (0, 2]");
  }
  Sampler gen(space, derive_seed(sampler.seed, 0x636f6e));
  // Antipodal pair is feasible at eps = 2 in a strictly convex space and
  // gives the value 1; keep it as a candidate so the endpoint is covered.
  double best = (eps == 2.0) ? 1.0 : 2.0;
  std::size_t restarts = std::max<std::size_t>(1, sampler.count / 100);
  for (std::size_t k = 0; k < restarts; ++k) {
    PrimalVector x = gen.unit_vector();
    PrimalVector u = gen.unit_vector();
    if (norm(x - u) < eps) {
      // steer toward the antipode so the path reaches distance eps
      u = normalized((-1.0) * x + 1e-3 * gen.unit_vector());
      if (norm(x - u) < eps) continue;
    }
    PrimalVector y = x;
    if (!bisect_feasible(x, u, eps, &y)) continue;
    double val = convexity_objective(x, y);
    // coordinate descent on the endpoint directions, re-projecting onto the
    // feasible set by re-bisection
    double step = kAscentStep;
    for (int sweep = 0; sweep < kAscentSweeps; ++sweep) {
      bool improved = false;
      for (std::size_t i = 0; i < u.dim(); ++i) {
        for (double dir : {step, -step}) {
          PrimalVector trial_u = u;
          trial_u[i] += dir;
          if (norm(trial_u) == 0.0) continue;
          trial_u = normalized(trial_u);
          PrimalVector trial_y = y;
          if (!bisect_feasible(x, trial_u, eps, &trial_y)) continue;
          double trial_val = convexity_objective(x, trial_y);
          if (trial_val < val) {
            val = trial_val;
            u = trial_u;
            y = trial_y;
            improved = true;
          }
        }
      }
      if (!improved) step *= kAscentShrink;
    }
    best = std::min(best, val);
  }
  if (best > 1.5 && eps < 2.0) {
    // no feasible pair found (tiny sample budgets); fall back to the
    // deterministic two-coordinate pair when the dimension allows
    if (space.dim >= 2) {
      PrimalVector x = zero_primal(space);
      x[0] = 1.0;
      PrimalVector u = zero_primal(space);
      u[0] = -1.0;
      u[1] = 1e-3;
      u = normalized(u);
      PrimalVector y = x;
      if (bisect_feasible(x, u, eps, &y)) {
        best = std::min(best, convexity_objective(x, y));
      }
    }
  }
  return std::max(best, 0.0);
}

double smoothness_constant_estimate(const SpaceDescriptor& space,
                                    const std::vector<double>& tau_grid,
                                    const SamplerConfig& sampler) {
  if (tau_grid.empty()) {
    throw std::invalid_argument("tau grid must be nonempty");
  }
  double k_est = 0.0;
  for (double tau : tau_grid) {
    if (!(tau > 0.0) || tau > 2.0) {
      throw std::invalid_argument("tau grid entries must lie in (0, 2]");
    }
    double est = modulus_smoothness_estimate(space, tau, sampler);
    k_est = std::max(k_est, est / std::pow(tau, space.q_smooth));
  }
  return k_est;
}

}  // namespace lpres
