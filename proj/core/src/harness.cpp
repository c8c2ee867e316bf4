#include "lpres/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "lpres/moduli.hpp"

namespace lpres {

namespace {

constexpr double kSlack = 1e-6;       // one-sided checks pass at slack 1+1e-6
constexpr double kDegenerate = 1e-14; // denominators below this are excluded

void require_regime(const SpaceDescriptor& space) {
  if (!space.theorem_regime()) {
    throw std::domain_error("theorem-regime check requires 1 < p <= 2");
  }
}

double theorem_constant_m(const SpaceDescriptor& space) {
  double q = space.q_smooth;
  return std::pow(2.0, 2.0 * q) * (1.0 / q);
}

struct OneSided {
  InequalityReport report;
  double scale = 1.0;

  explicit OneSided(std::string name) { report.check_name = std::move(name); }

  // margin >= 0 is the inequality; slack is already applied by the caller.
  void record(double margin, double local_scale) {
    scale = std::max(scale, local_scale);
    if (report.samples == 0 || margin < report.worst_margin) {
      report.worst_margin = margin;
    }
    if (margin < -1e-10 * scale) ++report.violations;
    ++report.samples;
  }
};

// x = lambda * y and the other dedicated degenerate pairs, built once per
// check from the first sampled direction.
struct DegeneratePairs {
  PrimalVector base;
  PrimalVector zero;
  PrimalVector collinear;  // 2 * base

  explicit DegeneratePairs(Sampler& gen, double radius)
      : base(gen.ball_point(0.5 * radius)),
        zero(zero_primal(gen.space())),
        collinear(2.0 * base) {}
};

double mu_hat_estimate(const SpaceDescriptor& space, const SamplerConfig& sampler) {
  Sampler gen(space, derive_seed(sampler.seed, 0x6d75));
  double sup = 1.0;  // collinear positive pairs realize ratio 1 in every space
  for (std::size_t k = 0; k < sampler.count; ++k) {
    PrimalVector x = gen.ball_point(sampler.radius);
    PrimalVector y = gen.ball_point(sampler.radius);
    double phi = bregman_phi(x, y);
    if (phi < kDegenerate) continue;
    double d = norm(x - y);
    sup = std::max(sup, d * d / phi);
  }
  return sup;
}

// --- long double re-evaluation used by adversarial witness verification ---

long double lnorm(const std::vector<long double>& v, long double p) {
  long double s = 0.0L;
  for (long double c : v) s += std::pow(std::abs(c), p);
  return std::pow(s, 1.0L / p);
}

std::vector<long double> lduality(const std::vector<long double>& v, long double p) {
  long double n = lnorm(v, p);
  std::vector<long double> out(v.size(), 0.0L);
  if (n == 0.0L) return out;
  long double scale = std::pow(n, 2.0L - p);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0L) {
      out[i] = scale * std::pow(std::abs(v[i]), p - 1.0L) * (v[i] > 0.0L ? 1.0L : -1.0L);
    }
  }
  return out;
}

std::vector<long double> widen(const PrimalVector& v) {
  return std::vector<long double>(v.coords.begin(), v.coords.end());
}

struct Inequality {
  std::string id;
  double threshold;  // the proved constant the ratio must stay below
  // ratio in double for the search, and in long double for re-verification
  std::function<double(const PrimalVector&, const PrimalVector&)> ratio;
  std::function<long double(const PrimalVector&, const PrimalVector&)> ratio_hp;
};

std::vector<Inequality> make_inequalities(const SpaceDescriptor& space) {
  const double q = space.q_smooth;
  const double p = space.p;
  std::vector<Inequality> out;

  auto main1_ratio = [q](const PrimalVector& x, const PrimalVector& y) {
    double d = norm(x - y);
    double mx = std::max(norm(x), norm(y));
    double denom = std::pow(d, q - 1.0) * std::pow(mx, 2.0 - q);
    if (denom < kDegenerate) return -1.0;
    return dual_norm(duality_map(x) - duality_map(y)) / denom;
  };
  auto main1_hp = [q, p](const PrimalVector& x, const PrimalVector& y) -> long double {
    auto xv = widen(x), yv = widen(y);
    auto jx = lduality(xv, p), jy = lduality(yv, p);
    std::vector<long double> jd(jx.size()), xd(xv.size());
    for (std::size_t i = 0; i < jx.size(); ++i) jd[i] = jx[i] - jy[i];
    for (std::size_t i = 0; i < xv.size(); ++i) xd[i] = xv[i] - yv[i];
    long double pc = p / (p - 1.0L);
    long double d = lnorm(xd, p);
    long double mx = std::max(lnorm(xv, p), lnorm(yv, p));
    long double denom = std::pow(d, (long double)q - 1.0L) * std::pow(mx, 2.0L - (long double)q);
    if (denom < 1e-16L) return -1.0L;
    return lnorm(jd, pc) / denom;
  };
  out.push_back({"main1", theorem_constant_m(space), main1_ratio, main1_hp});

  auto keyinequ2_ratio = [](const PrimalVector& x, const PrimalVector& y) {
    double nx = norm(x), ny = norm(y);
    double d = norm(x - y);
    if (nx < kDegenerate || ny < kDegenerate || d < kDegenerate) return -1.0;
    return norm((1.0 / nx) * x - (1.0 / ny) * y) * std::max(nx, ny) / d;
  };
  auto keyinequ2_hp = [p](const PrimalVector& x, const PrimalVector& y) -> long double {
    auto xv = widen(x), yv = widen(y);
    long double nx = lnorm(xv, p), ny = lnorm(yv, p);
    std::vector<long double> diff(xv.size()), ndiff(xv.size());
    for (std::size_t i = 0; i < xv.size(); ++i) {
      diff[i] = xv[i] - yv[i];
      ndiff[i] = xv[i] / nx - yv[i] / ny;
    }
    long double d = lnorm(diff, p);
    if (nx < 1e-16L || ny < 1e-16L || d < 1e-16L) return -1.0L;
    return lnorm(ndiff, p) * std::max(nx, ny) / d;
  };
  out.push_back({"keyinequ2", 2.0, keyinequ2_ratio, keyinequ2_hp});

  auto support_margin = [](const PrimalVector& u, const PrimalVector& v) {
    double nu = norm(u);
    if (nu < kDegenerate) return -1.0;
    DualVector ju = (1.0 / nu) * duality_map(u);
    return pairing(v, ju) - (norm(u + v) - nu);
  };
  auto support_hp = [p](const PrimalVector& u, const PrimalVector& v) -> long double {
    auto uv = widen(u), vv = widen(v);
    long double nu = lnorm(uv, p);
    if (nu < 1e-16L) return -1.0L;
    auto ju = lduality(uv, p);
    long double pair = 0.0L;
    std::vector<long double> sum(uv.size());
    for (std::size_t i = 0; i < uv.size(); ++i) {
      pair += vv[i] * ju[i] / nu;
      sum[i] = uv[i] + vv[i];
    }
    return pair - (lnorm(sum, p) - nu);
  };
  out.push_back({"support", 0.0, support_margin, support_hp});

  auto keylem1_ratio = [&space](const PrimalVector& x, const PrimalVector& y) {
    double nx = norm(x), ny = norm(y);
    if (nx < kDegenerate || ny < kDegenerate) return -1.0;
    double t = norm((1.0 / nx) * x - (1.0 / ny) * y);
    if (t < kDegenerate) return -1.0;
    double bound = 2.0 * std::max(nx, ny) * rho_ceiling(space, 2.0 * t) / t;
    return dual_norm(duality_map(x) - duality_map(y)) / bound;
  };
  auto keylem1_hp = [&space, p](const PrimalVector& x, const PrimalVector& y) -> long double {
    auto xv = widen(x), yv = widen(y);
    long double nx = lnorm(xv, p), ny = lnorm(yv, p);
    if (nx < 1e-16L || ny < 1e-16L) return -1.0L;
    std::vector<long double> nd(xv.size()), jd(xv.size());
    auto jx = lduality(xv, p), jy = lduality(yv, p);
    for (std::size_t i = 0; i < xv.size(); ++i) {
      nd[i] = xv[i] / nx - yv[i] / ny;
      jd[i] = jx[i] - jy[i];
    }
    long double t = lnorm(nd, p);
    if (t < 1e-16L) return -1.0L;
    long double tau = 2.0L * t;
    long double rho = (p == 2.0) ? std::sqrt(1.0L + tau * tau) - 1.0L
                                 : std::pow(tau, (long double)p) / (long double)p;
    long double bound = 2.0L * std::max(nx, ny) * rho / t;
    long double pc = p / (p - 1.0L);
    return lnorm(jd, pc) / bound;
  };
  out.push_back({"keylem1", 1.0, keylem1_ratio, keylem1_hp});

  return out;
}

std::string serialize_coords(const PrimalVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (i) out += ",";
    out += format_double(v.coords[i]);
  }
  return out;
}

}  // namespace

InequalityReport check_phi_identity(const SpaceDescriptor& space,
                                    const SamplerConfig& sampler) {
  InequalityReport report;
  report.check_name = "phi_identity";
  Sampler gen(space, derive_seed(sampler.seed, 0x706869));
  DegeneratePairs deg(gen, sampler.radius);
  double worst_rel = 0.0;
  auto probe = [&](const PrimalVector& x, const PrimalVector& y) {
    double lhs = bregman_phi(x, y) + bregman_phi(y, x);
    double rhs = 2.0 * pairing(x - y, duality_map(x) - duality_map(y));
    double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    double rel = std::abs(lhs - rhs) / scale;
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-9) ++report.violations;
    ++report.samples;
  };
  // the identity holds on all of E, so every degenerate pair is included
  probe(deg.base, deg.base);
  probe(deg.base, deg.zero);
  probe(deg.zero, deg.base);
  probe(deg.base, deg.collinear);
  for (std::size_t k = 0; k < sampler.count; ++k) {
    probe(gen.ball_point(sampler.radius), gen.ball_point(sampler.radius));
  }
  report.worst_margin = -worst_rel;
  report.estimated_constant = worst_rel;
  report.details["tolerance"] = "1e-09";
  report.details["degenerate_included"] = "4";
  return report;
}

InequalityReport estimate_mu(const SpaceDescriptor& space, const SamplerConfig& sampler) {
  require_regime(space);
  InequalityReport report;
  report.check_name = "estimate_mu";
  Sampler gen(space, derive_seed(sampler.seed, 0x6d75));
  double sup = 0.0;
  std::int64_t excluded = 0;
  auto probe = [&](const PrimalVector& x, const PrimalVector& y) {
    double phi = bregman_phi(x, y);
    if (phi < kDegenerate) {
      ++excluded;
      return;
    }
    double d = norm(x - y);
    sup = std::max(sup, d * d / phi);
    ++report.samples;
  };
  DegeneratePairs deg(gen, sampler.radius);
  probe(deg.base, deg.base);          // excluded: phi = 0
  probe(deg.collinear, deg.base);     // ratio 1 in closed form (1-D reduction)
  for (std::size_t k = 0; k < sampler.count; ++k) {
    probe(gen.ball_point(sampler.radius), gen.ball_point(sampler.radius));
  }
  report.estimated_constant = sup;
  report.worst_margin = std::isfinite(sup) ? 0.0 : -1.0;
  if (!std::isfinite(sup)) ++report.violations;
  report.details["excluded_pairs"] = std::to_string(excluded);
  report.details["convention"] = "mu_hat = sup ||x-y||^2 / phi(x,y)";
  return report;
}

InequalityReport check_strong_monotonicity(const SpaceDescriptor& space,
                                           const SamplerConfig& sampler) {
  require_regime(space);
  double mu = mu_hat_estimate(space, sampler);
  OneSided check("strong_monotonicity");
  Sampler gen(space, derive_seed(sampler.seed, 0x73746d6f));
  auto probe = [&](const PrimalVector& x, const PrimalVector& y) {
    double d = norm(x - y);
    double lhs = d * d / (2.0 * mu * (1.0 + kSlack));
    double rhs = pairing(x - y, duality_map(x) - duality_map(y));
    check.record(rhs - lhs, std::max(1.0, std::abs(rhs)));
  };
  DegeneratePairs deg(gen, sampler.radius);
  probe(deg.base, deg.base);  // 0 <= 0
  probe(deg.base, deg.zero);
  probe(deg.collinear, deg.base);
  for (std::size_t k = 0; k < sampler.count; ++k) {
    probe(gen.ball_point(sampler.radius), gen.ball_point(sampler.radius));
  }
  check.report.estimated_constant = mu;
  check.report.details["mu_hat"] = format_double(mu);
  return check.report;
}

InequalityReport check_support_inequality(const SpaceDescriptor& space,
                                          const SamplerConfig& sampler) {
  OneSided check("support_inequality");
  Sampler gen(space, derive_seed(sampler.seed, 0x737570));
  std::int64_t skipped = 0;
  auto probe = [&](const PrimalVector& u, const PrimalVector& v) {
    double nu = norm(u);
    if (nu < kDegenerate) {
      ++skipped;  // u = 0 is outside the hypothesis
      return;
    }
    DualVector ju = (1.0 / nu) * duality_map(u);
    double margin = (norm(u + v) - nu) - pairing(v, ju);
    check.record(margin, std::max(1.0, nu + norm(v)));
  };
  DegeneratePairs deg(gen, sampler.radius);
  probe(deg.base, deg.zero);       // v = 0: equality
  probe(deg.base, deg.base);       // v = u: equality
  probe(deg.zero, deg.base);       // skipped by hypothesis
  probe(deg.collinear, deg.base);
  for (std::size_t k = 0; k < sampler.count; ++k) {
    probe(gen.ball_point(sampler.radius), gen.ball_point(sampler.radius));
  }
  check.report.details["skipped_zero_u"] = std::to_string(skipped);
  return check.report;
}

InequalityReport check_keylem1(const SpaceDescriptor& space,
                               const SamplerConfig& sampler) {
  OneSided check("keylem1");
  Sampler gen(space, derive_seed(sampler.seed, 0x6b6c31));
  std::int64_t skipped = 0;
  auto probe = [&](const PrimalVector& x, const PrimalVector& y) {
    double nx = norm(x), ny = norm(y);
    if (nx < kDegenerate || ny < kDegenerate) {
      ++skipped;  // hypothesis: x, y nonzero
      return;
    }
    double t = norm((1.0 / nx) * x - (1.0 / ny) * y);
    if (t < kDegenerate) {
      ++skipped;  // normalized-collinear pairs are outside the hypothesis
      return;
    }
    double bound = 2.0 * std::max(nx, ny) * rho_ceiling(space, 2.0 * t) / t;
    double lhs = dual_norm(duality_map(x) - duality_map(y));
    check.record(bound * (1.0 + kSlack) - lhs, std::max(1.0, bound));
  };
  DegeneratePairs deg(gen, sampler.radius);
  probe(deg.base, deg.base);       // skipped (t = 0)
  probe(deg.base, deg.zero);       // skipped (y = 0)
  probe(deg.collinear, deg.base);  // skipped (normalized-collinear)
  for (std::size_t k = 0; k < sampler.count; ++k) {
    probe(gen.ball_point(sampler.radius), gen.ball_point(sampler.radius));
  }
  check.report.details["skipped_degenerate"] = std::to_string(skipped);
  check.report.details["rho_ceiling"] =
      (space.p == 2.0) ? "sqrt(1+tau^2)-1" : "tau^p/p";
  // empirical rho at a reference scale, for context only (a lower estimate)
  SamplerConfig small = sampler;
  small.count = std::min<std::size_t>(sampler.count, 200);
  check.report.details["rho_empirical_tau1"] =
      format_double(modulus_smoothness_estimate(space, 1.0, small));
  return check.report;
}

InequalityReport check_normalization_inequality(const SpaceDescriptor& space,
                                                const SamplerConfig& sampler) {
  OneSided check("normalization_inequality");
  Sampler gen(space, derive_seed(sampler.seed, 0x6e6f726d));
  std::int64_t skipped = 0;
  auto probe = [&](const PrimalVector& x, const PrimalVector& y) {
    double nx = norm(x), ny = norm(y);
    if (nx < kDegenerate || ny < kDegenerate) {
      ++skipped;
      return;
    }
    double lhs = norm((1.0 / nx) * x - (1.0 / ny) * y);
    double rhs = 2.0 * norm(x - y) / std::max(nx, ny);
    check.record(rhs - lhs, std::max(1.0, rhs));
  };
  DegeneratePairs deg(gen, sampler.radius);
  probe(deg.base, deg.base);
  probe(deg.collinear, deg.base);  // collinear: lhs = 0
  probe(deg.base, deg.zero);       // skipped
  for (std::size_t k = 0; k < sampler.count; ++k) {
    probe(gen.ball_point(sampler.radius), gen.ball_point(sampler.radius));
  }
  check.report.details["skipped_zero"] = std::to_string(skipped);
  return check.report;
}

InequalityReport check_theorem_main1(const SpaceDescriptor& space,
                                     const SamplerConfig& sampler,
                                     const HarnessHooks& hooks) {
  require_regime(space);
  const double q = space.q_smooth;
  const double m_constant =
      hooks.m_override ? *hooks.m_override : theorem_constant_m(space);
  OneSided check("theorem_main1");
  Sampler gen(space, derive_seed(sampler.seed, 0x6d31));
  double m_hat = 0.0;
  auto probe = [&](const PrimalVector& x, const PrimalVector& y) {
    double d = norm(x - y);
    double mx = std::max(norm(x), norm(y));
    double bound = m_constant * std::pow(d, q - 1.0) * std::pow(mx, 2.0 - q);
    double lhs = dual_norm(duality_map(x) - duality_map(y));
    check.record(bound * (1.0 + kSlack) - lhs, std::max(1.0, bound));
    double denom = std::pow(d, q - 1.0) * std::pow(mx, 2.0 - q);
    if (denom > kDegenerate) m_hat = std::max(m_hat, lhs / denom);
  };
  // the theorem covers x = y, x = 0, y = 0: include them
  DegeneratePairs deg(gen, sampler.radius);
  probe(deg.base, deg.base);
  probe(deg.base, deg.zero);
  probe(deg.zero, deg.base);
  probe(deg.collinear, deg.base);
  for (std::size_t k = 0; k < sampler.count; ++k) {
    probe(gen.ball_point(sampler.radius), gen.ball_point(sampler.radius));
  }
  check.report.estimated_constant = m_hat;
  check.report.details["M"] = format_double(m_constant);
  check.report.details["K"] = format_double(1.0 / q);
  SamplerConfig small = sampler;
  small.count = std::min<std::size_t>(sampler.count, 200);
  check.report.details["K_est_empirical"] = format_double(
      smoothness_constant_estimate(space, {0.25, 0.5, 1.0}, small));
  return check.report;
}

InequalityReport check_holder_T(const SpaceDescriptor& space,
                                const MonotoneOperatorSpec& op, double r,
                                const SamplerConfig& sampler,
                                const HarnessHooks& hooks) {
  require_regime(space);
  const double q = space.q_smooth;
  const double mu_hat = mu_hat_estimate(space, sampler);
  const double mu = 2.0 * mu_hat;  // strong-monotonicity convention 1/(2 mu)
  const double m_constant =
      hooks.m_override ? *hooks.m_override : theorem_constant_m(space);
  const double big_r = sampler.radius;
  const double holder_l = mu * m_constant * std::pow(big_r, 2.0 - q);

  OneSided check("holder_T");
  Sampler gen(space, derive_seed(sampler.seed, 0x686f6c));
  double l_hat = 0.0;
  std::int64_t failures = 0;
  double radius = std::isfinite(op.domain_radius)
                      ? std::min(big_r, op.domain_radius)
                      : big_r;
  auto solve = [&](const PrimalVector& v, PrimalVector* out) {
    try {
      ResolventProblem prob{space, op, r, v, 1e-10, 200};
      *out = solve_resolvent(prob).z;
      return true;
    } catch (const SolverError&) {
      ++failures;
      return false;
    }
  };
  auto probe = [&](const PrimalVector& x, const PrimalVector& y) {
    PrimalVector tx = x, ty = y;
    if (!solve(x, &tx) || !solve(y, &ty)) return;
    double d = norm(x - y);
    double bound = holder_l * std::pow(d, q - 1.0);
    double lhs = norm(tx - ty);
    check.record(bound * (1.0 + kSlack) - lhs, std::max(1.0, bound));
    if (std::pow(d, q - 1.0) > kDegenerate) {
      l_hat = std::max(l_hat, lhs / std::pow(d, q - 1.0));
    }
  };
  DegeneratePairs deg(gen, radius);
  probe(deg.base, deg.base);
  probe(deg.base, deg.zero);
  probe(deg.collinear, deg.base);
  for (std::size_t k = 0; k < sampler.count; ++k) {
    probe(gen.ball_point(radius), gen.ball_point(radius));
  }
  if (failures > 0 &&
      failures * 1000 > static_cast<std::int64_t>(sampler.count)) {
    ++check.report.violations;  // solver failure budget (0.1%) exceeded
  }
  check.report.estimated_constant = l_hat;
  check.report.details["mu_hat"] = format_double(mu_hat);
  check.report.details["mu_convention"] = "mu = 2*mu_hat";
  check.report.details["M"] = format_double(m_constant);
  check.report.details["L"] = format_double(holder_l);
  check.report.details["r"] = format_double(r);
  check.report.details["solver_failures"] = std::to_string(failures);
  return check.report;
}

HolderFitData fit_holder_exponent(MapUnderTest map, const SpaceDescriptor& space,
                                  const MonotoneOperatorSpec& op, double r,
                                  const SamplerConfig& sampler) {
  require_regime(space);
  const double q = space.q_smooth;
  const double big_r = sampler.radius;
  const double mu = 2.0 * mu_hat_estimate(space, sampler);
  const double m_constant = theorem_constant_m(space);
  const double bound_l = (map == MapUnderTest::duality)
                             ? m_constant * std::pow(big_r, 2.0 - q)
                             : mu * m_constant * std::pow(big_r, 2.0 - q);

  HolderFitData data;
  data.bound_slope = q - 1.0;
  data.bound_intercept = std::log10(bound_l);
  data.fit.scale_lo = sampler.scale_decades_lo;
  data.fit.scale_hi = sampler.scale_decades_hi;

  Sampler gen(space, derive_seed(sampler.seed, 0x666974));
  std::size_t n_base = std::max<std::size_t>(10, sampler.count / 100);
  constexpr int kPerBase = 20;
  auto image_distance = [&](const PrimalVector& x, const PrimalVector& y) {
    if (map == MapUnderTest::duality) {
      return dual_norm(duality_map(x) - duality_map(y));
    }
    ResolventProblem px{space, op, r, x, 1e-10, 200};
    ResolventProblem py{space, op, r, y, 1e-10, 200};
    return norm(solve_resolvent(px).z - solve_resolvent(py).z);
  };

  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < n_base; ++b) {
    PrimalVector base = gen.ball_point(0.9 * big_r);
    PrimalVector dir = gen.unit_vector();
    for (int k = 0; k < kPerBase; ++k) {
      double s = sampler.scale_decades_lo +
                 (sampler.scale_decades_hi - sampler.scale_decades_lo) *
                     (kPerBase == 1 ? 0.0 : k / double(kPerBase - 1));
      double dist = std::pow(10.0, s);
      PrimalVector y = base + dist * dir;
      if (norm(y) > big_r) continue;  // keep pairs inside the sampling ball
      double img = image_distance(base, y);
      double d = norm(base - y);
      if (img < 1e-300 || d < 1e-300) continue;
      double lx = std::log10(d);
      double ly = std::log10(img);
      double bound_value = data.bound_slope * lx + data.bound_intercept;
      data.points.push_back({double(b), lx, ly, bound_value});
      worst = std::max(worst, ly - bound_value);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      syy += ly * ly;
    }
  }
  std::int64_t n = static_cast<std::int64_t>(data.points.size());
  data.fit.n_pairs = n;
  if (n >= 10) {
    double dn = double(n);
    double cov = sxy - sx * sy / dn;
    double varx = sxx - sx * sx / dn;
    double vary = syy - sy * sy / dn;
    data.fit.slope = cov / varx;
    data.fit.intercept = (sy - data.fit.slope * sx) / dn;
    data.fit.r_squared = (vary > 0.0) ? (cov * cov) / (varx * vary) : 1.0;
  }
  data.worst_excess = (n > 0) ? worst : 0.0;
  return data;
}

const std::vector<std::string>& registered_inequalities() {
  static const std::vector<std::string> ids = {"main1", "keyinequ2", "support",
                                              "keylem1"};
  return ids;
}

InequalityReport adversarial_search(const std::string& inequality_id,
                                    const SpaceDescriptor& space, int restarts,
                                    int steps, const SamplerConfig& sampler) {
  auto inequalities = make_inequalities(space);
  const Inequality* target = nullptr;
  for (const auto& ineq : inequalities) {
    if (ineq.id == inequality_id) target = &ineq;
  }
  if (target == nullptr) {
    throw std::invalid_argument("unknown inequality id: " + inequality_id);
  }
  if ((inequality_id == "main1" || inequality_id == "keylem1")) {
    require_regime(space);
  }

  InequalityReport report;
  report.check_name = "adversarial_" + inequality_id;
  Sampler gen(space, derive_seed(sampler.seed, 0x616476));
  const std::size_t n = space.dim;
  const double big_r = sampler.radius;

  auto project = [&](PrimalVector& v) {
    double nv = norm(v);
    if (nv > big_r) v = (big_r / nv) * v;
  };
  auto value = [&](const std::vector<double>& params) {
    PrimalVector x(std::vector<double>(params.begin(), params.begin() + n), space);
    PrimalVector y(std::vector<double>(params.begin() + n, params.end()), space);
    return target->ratio(x, y);
  };

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_params(2 * n, 0.0);
  for (int restart = 0; restart < restarts; ++restart) {
    PrimalVector x = gen.ball_point(big_r);
    PrimalVector y = gen.ball_point(big_r);
    std::vector<double> params(2 * n);
    std::copy(x.coords.begin(), x.coords.end(), params.begin());
    std::copy(y.coords.begin(), y.coords.end(), params.begin() + n);
    double val = value(params);
    double step = 0.05;
    for (int it = 0; it < steps; ++it) {
      // finite-difference ascent direction
      std::vector<double> grad(2 * n, 0.0);
      const double h = 1e-6;
      for (std::size_t i = 0; i < 2 * n; ++i) {
        std::vector<double> plus = params, minus = params;
        plus[i] += h;
        minus[i] -= h;
        grad[i] = (value(plus) - value(minus)) / (2.0 * h);
      }
      double gn = 0.0;
      for (double g : grad) gn += g * g;
      gn = std::sqrt(gn);
      if (gn < 1e-16) break;
      std::vector<double> trial = params;
      for (std::size_t i = 0; i < 2 * n; ++i) trial[i] += step * grad[i] / gn;
      PrimalVector tx(std::vector<double>(trial.begin(), trial.begin() + n), space);
      PrimalVector ty(std::vector<double>(trial.begin() + n, trial.end()), space);
      project(tx);
      project(ty);
      std::copy(tx.coords.begin(), tx.coords.end(), trial.begin());
      std::copy(ty.coords.begin(), ty.coords.end(), trial.begin() + n);
      double tval = value(trial);
      if (tval > val) {
        params = trial;
        val = tval;
        step = std::min(step * 1.5, 0.25);
      } else {
        step *= 0.5;
        if (step < 1e-12) break;
      }
    }
    if (val > best) {
      best = val;
      best_params = params;
    }
    ++report.samples;
  }

  PrimalVector wx(std::vector<double>(best_params.begin(), best_params.begin() + n),
                  space);
  PrimalVector wy(std::vector<double>(best_params.begin() + n, best_params.end()),
                  space);
  report.estimated_constant = best;
  report.details["threshold"] = format_double(target->threshold);
  report.details["witness_x"] = serialize_coords(wx);
  report.details["witness_y"] = serialize_coords(wy);
  report.worst_margin = target->threshold - best;
  if (best > target->threshold * (1.0 + 1e-12) + 1e-12) {
    // candidate violation: only count it after extended-precision re-evaluation
    long double verified = target->ratio_hp(wx, wy);
    report.details["verified_ratio"] = format_double(double(verified));
    if (double(verified) > target->threshold * (1.0 + 1e-12) + 1e-12) {
      ++report.violations;
    }
  }
  return report;
}

}  // namespace lpres
