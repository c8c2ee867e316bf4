// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Criterion 7 shells out to the CLI named by LPRES_CLI.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lpres/config.hpp"
#include "lpres/harness.hpp"
#include "lpres/moduli.hpp"
#include "lpres/resolvent.hpp"

using namespace lpres;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int number, bool ok, const std::string& label, double seconds) {
  std::printf("[%s] criterion %d: %s (%.1fs)\n", ok ? "PASS" : "FAIL", number,
              label.c_str(), seconds);
  if (!ok) ++failures;
}

template <typename F>
void criterion(int number, const std::string& label, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::printf("  exception: %s\n", e.what());
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  verdict(number, ok, label, seconds);
}

SamplerConfig cfg(std::uint64_t seed, std::size_t count, double radius = 1.0) {
  SamplerConfig s;
  s.seed = seed;
  s.count = count;
  s.radius = radius;
  return s;
}

MonotoneOperatorSpec spec_of(OperatorVariant v) {
  MonotoneOperatorSpec s;
  s.variant = std::move(v);
  return s;
}

const std::vector<double> kExponents = {1.1, 1.5, 2.0};
const std::vector<std::size_t> kSmallDims = {2, 10};

std::vector<MonotoneOperatorSpec> catalog(std::size_t n) {
  std::vector<MonotoneOperatorSpec> ops;
  ops.push_back(spec_of(ZeroOp{}));
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = (i % 2 == 0) ? 0.5 : -0.5;
  ops.push_back(spec_of(ConstantOp{c}));
  std::vector<std::vector<double>> tri(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    tri[i][i] = 2.0;
    if (i + 1 < n) tri[i][i + 1] = tri[i + 1][i] = 0.5;
  }
  ops.push_back(spec_of(LinearPsdOp{tri}));
  ops.push_back(spec_of(ScaledDualityOp{0.7}));
  std::vector<double> b(n, 0.25);
  ops.push_back(spec_of(GradQuadraticOp{b, 1.5}));
  ops.push_back(spec_of(SubgradL1Op{0.3}));
  SumOp sum;
  sum.members.push_back(spec_of(GradQuadraticOp{b, 1.0}));
  sum.members.push_back(spec_of(SubgradL1Op{0.2}));
  ops.push_back(spec_of(sum));
  return ops;
}

bool identical_trees(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> rel_a, rel_b;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) rel_a.push_back(fs::relative(e.path(), a));
  }
  for (const auto& e : fs::recursive_directory_iterator(b)) {
    if (e.is_regular_file()) rel_b.push_back(fs::relative(e.path(), b));
  }
  std::sort(rel_a.begin(), rel_a.end());
  std::sort(rel_b.begin(), rel_b.end());
  if (rel_a != rel_b) return false;
  for (const auto& rel : rel_a) {
    std::ifstream fa(a / rel, std::ios::binary), fb(b / rel, std::ios::binary);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    if (sa.str() != sb.str()) {
      std::printf("  differs: %s\n", rel.string().c_str());
      return false;
    }
  }
  return !rel_a.empty();
}

}  // namespace

int main() {
  criterion(1, "Bregman identity residual <= 1e-9", [] {
    bool ok = true;
    for (double p : kExponents) {
      for (std::size_t n : {1u, 2u, 3u, 10u, 50u}) {
        auto r = check_phi_identity(SpaceDescriptor::lp(n, p), cfg(101, 10000, 3.0));
        ok = ok && r.violations == 0 && r.worst_margin >= -1e-9;
      }
    }
    return ok;
  });

  criterion(2, "duality map defining property and inverse", [] {
    bool ok = true;
    for (double p : kExponents) {
      for (std::size_t n : kSmallDims) {
        auto space = SpaceDescriptor::lp(n, p);
        Sampler gen(space, derive_seed(102, n));
        for (int k = 0; k < 10000; ++k) {
          PrimalVector x = gen.ball_point(3.0);
          DualVector jx = duality_map(x);
          double nx2 = norm(x) * norm(x);
          double scale = std::max(1.0, nx2);
          ok = ok && std::abs(pairing(x, jx) - nx2) <= 1e-9 * scale;
          ok = ok && std::abs(dual_norm(jx) * dual_norm(jx) - nx2) <= 1e-9 * scale;
          PrimalVector back = inverse_duality_map(jx);
          ok = ok && norm(back - x) <= 1e-9 * std::max(1.0, norm(x));
          if (!ok) return false;
        }
      }
    }
    return ok;
  });

  criterion(3, "norm bound on J with M = 2^{2q}/q, sampled + adversarial", [] {
    bool ok = true;
    for (double p : kExponents) {
      for (std::size_t n : kSmallDims) {
        auto space = SpaceDescriptor::lp(n, p);
        auto sampled = check_theorem_main1(space, cfg(103, 100000, 2.0));
        ok = ok && sampled.violations == 0;
        auto adv = adversarial_search("main1", space, 100, 60, cfg(103, 1000, 2.0));
        ok = ok && adv.violations == 0;
      }
    }
    return ok;
  });

  criterion(4, "firmly nonexpansive type margins with certified residuals", [] {
    for (double p : {1.5, 2.0}) {
      for (std::size_t n : kSmallDims) {
        auto space = SpaceDescriptor::lp(n, p);
        for (const auto& op : catalog(n)) {
          for (double r : {0.1, 1.0, 10.0}) {
            Sampler gen(space, derive_seed(104, n * 1000 + std::size_t(r * 10)));
            for (int k = 0; k < 10000; ++k) {
              ResolventProblem px, py;
              px.space = py.space = space;
              px.op = py.op = op;
              px.r = py.r = r;
              px.x = gen.ball_point(2.0);
              py.x = gen.ball_point(2.0);
              auto sx = solve_resolvent(px);
              auto sy = solve_resolvent(py);
              if (sx.residual > 1e-10 || sy.residual > 1e-10) return false;
              auto d = sx.z - sy.z;
              double margin =
                  pairing(d, duality_map(px.x) - duality_map(py.x)) -
                  pairing(d, duality_map(sx.z) - duality_map(sy.z));
              double scale = 1.0 + norm(px.x) * norm(px.x) + norm(py.x) * norm(py.x);
              if (margin < -1e-8 * scale) return false;
            }
          }
        }
      }
    }
    return true;
  });

  criterion(5, "resolvent Holder bound and fit points under the line", [] {
    bool ok = true;
    auto op = spec_of(GradQuadraticOp{{0.0, 0.0}, 1.0});
    SumOp mixed;
    mixed.members.push_back(spec_of(GradQuadraticOp{{0.1, -0.1}, 1.0}));
    mixed.members.push_back(spec_of(SubgradL1Op{0.2}));
    for (double p : kExponents) {
      auto space = SpaceDescriptor::lp(2, p);
      auto sampled = check_holder_T(space, op, 1.0, cfg(105, 10000, 1.0));
      ok = ok && sampled.violations == 0;
      auto data = fit_holder_exponent(MapUnderTest::resolvent, space, op, 1.0,
                                      cfg(105, 300, 1.0));
      ok = ok && data.worst_excess <= 1e-9 && !data.points.empty();
    }
    auto p15 = SpaceDescriptor::lp(2, 1.5);
    ok = ok && check_holder_T(p15, spec_of(mixed), 1.0, cfg(105, 10000, 1.0))
                       .violations == 0;
    return ok;
  });

  criterion(6, "Hilbert degeneracy: identity J, prox formulas, mu = 1", [] {
    auto space = SpaceDescriptor::lp(3, 2.0);
    Sampler gen(space, derive_seed(106, 1));
    for (int k = 0; k < 1000; ++k) {
      PrimalVector x = gen.ball_point(2.0);
      DualVector jx = duality_map(x);
      PrimalVector y = gen.ball_point(2.0);
      for (std::size_t i = 0; i < 3; ++i) {
        if (std::abs(jx[i] - x[i]) > 1e-12) return false;
      }
      double d = norm(x - y);
      if (std::abs(bregman_phi(x, y) - d * d) > 1e-9 * (1.0 + d * d)) return false;
    }
    // shrinkage: J_r x = soft(x, r*gamma) for A = gamma * sign
    {
      ResolventProblem prob;
      prob.space = space;
      prob.op = spec_of(SubgradL1Op{1.0});
      prob.r = 0.5;
      prob.x = PrimalVector({2.0, 0.3, -1.0}, space);
      auto sol = solve_resolvent(prob);
      const double expect[3] = {1.5, 0.0, -0.5};
      for (std::size_t i = 0; i < 3; ++i) {
        if (std::abs(sol.z[i] - expect[i]) > 1e-8) return false;
      }
    }
    // quadratic: J_r x = (x + r*lambda*b) / (1 + r*lambda)
    {
      ResolventProblem prob;
      prob.space = space;
      prob.op = spec_of(GradQuadraticOp{{1.0, -1.0, 0.0}, 2.0});
      prob.r = 0.25;
      prob.x = PrimalVector({2.0, 0.5, 3.0}, space);
      auto sol = solve_resolvent(prob);
      for (std::size_t i = 0; i < 3; ++i) {
        double b = (i == 0) ? 1.0 : (i == 1) ? -1.0 : 0.0;
        double expect = (prob.x[i] + 0.5 * b) / 1.5;
        if (std::abs(sol.z[i] - expect) > 1e-8) return false;
      }
    }
    auto mu = estimate_mu(space, cfg(106, 10000, 2.0));
    return mu.estimated_constant && std::abs(*mu.estimated_constant - 1.0) <= 1e-6;
  });

  criterion(7, "verify run is byte-identical across invocations", [] {
    const char* cli = std::getenv("LPRES_CLI");
    if (!cli) {
      std::printf("  LPRES_CLI is not set\n");
      return false;
    }
    fs::path work = fs::current_path() / "acceptance-determinism";
    fs::remove_all(work);
    fs::create_directories(work);
    std::ofstream(work / "run.cfg")
        << "[space]\ndim = 2\np = 1.5\n\n[sampler]\nseed = 7\ncount = 500\n"
           "radius = 2\n\n[run]\nchecks = all\nr_values = 0.5 2\n"
           "format = csv\njobs = 2\n\n[operator]\nvariant = grad_quadratic\n"
           "lambda = 1\nb = 0 0\n";
    auto invoke = [&](const std::string& tag) {
      std::string cmd = std::string("\"") + cli + "\" verify --config \"" +
                        (work / "run.cfg").string() + "\" --out \"" +
                        (work / tag).string() + "\" > \"" +
                        (work / (tag + ".log")).string() + "\" 2>&1";
      return std::system(cmd.c_str());
    };
    int rc1 = invoke("a");
    int rc2 = invoke("b");
    if (rc1 != rc2) return false;
    std::ifstream la(work / "a.log"), lb(work / "b.log");
    std::stringstream sa, sb;
    sa << la.rdbuf();
    sb << lb.rdbuf();
    if (sa.str() != sb.str()) return false;
    return identical_trees(work / "a", work / "b");
  });

  criterion(8, "normalization and support inequalities, ratio near 2", [] {
    bool ok = true;
    for (double p : kExponents) {
      for (std::size_t n : kSmallDims) {
        auto space = SpaceDescriptor::lp(n, p);
        ok = ok && check_normalization_inequality(space, cfg(108, 100000, 2.0))
                           .violations == 0;
        ok = ok && check_support_inequality(space, cfg(108, 100000, 2.0))
                           .violations == 0;
      }
    }
    auto adv = adversarial_search("keyinequ2", SpaceDescriptor::lp(2, 1.5), 50,
                                  100, cfg(108, 1000, 2.0));
    ok = ok && adv.violations == 0 && adv.estimated_constant &&
         *adv.estimated_constant <= 2.0 + 1e-9 && *adv.estimated_constant >= 1.9;
    return ok;
  });

  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
