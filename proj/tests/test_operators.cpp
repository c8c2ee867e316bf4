#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lpres/operators.hpp"

using namespace lpres;

namespace {

PrimalVector make_vec(const SpaceDescriptor& space, std::vector<double> coords) {
  return PrimalVector(std::move(coords), space);
}

MonotoneOperatorSpec spec_of(OperatorVariant v) {
  MonotoneOperatorSpec s;
  s.variant = std::move(v);
  return s;
}

}  // namespace

TEST_CASE("zero and constant evaluations") {
  auto space = SpaceDescriptor::lp(3, 1.5);
  auto z = make_vec(space, {1.0, -2.0, 0.5});

  auto e0 = eval(spec_of(ZeroOp{}), z);
  for (std::size_t i = 0; i < 3; ++i) CHECK(e0.output[i] == 0.0);
  CHECK_FALSE(e0.is_selection);

  auto ec = eval(spec_of(ConstantOp{{3.0, 0.0, -1.0}}), z);
  CHECK(ec.output[0] == 3.0);
  CHECK(ec.output[1] == 0.0);
  CHECK(ec.output[2] == -1.0);
}

TEST_CASE("subgradient selection uses sign(0) = 0") {
  auto space = SpaceDescriptor::lp(3, 2.0);
  auto z = make_vec(space, {3.0, 0.0, -2.0});
  auto e = eval(spec_of(SubgradL1Op{1.0}), z);
  CHECK(e.output[0] == 1.0);
  CHECK(e.output[1] == 0.0);
  CHECK(e.output[2] == -1.0);
  CHECK(e.is_selection);
}

TEST_CASE("grad_quadratic with lambda 0 matches zero") {
  auto space = SpaceDescriptor::lp(2, 2.0);
  auto z = make_vec(space, {0.7, -0.3});
  auto e = eval(spec_of(GradQuadraticOp{{5.0, -5.0}, 0.0}), z);
  CHECK(e.output[0] == 0.0);
  CHECK(e.output[1] == 0.0);
}

TEST_CASE("grad_quadratic closed evaluation") {
  auto space = SpaceDescriptor::lp(2, 2.0);
  auto z = make_vec(space, {1.0, 4.0});
  auto e = eval(spec_of(GradQuadraticOp{{0.5, 1.0}, 2.0}), z);
  CHECK(e.output[0] == doctest::Approx(1.0).epsilon(1e-15));  // 2*(1-0.5)
  CHECK(e.output[1] == doctest::Approx(6.0).epsilon(1e-15));  // 2*(4-1)
}

TEST_CASE("scaled duality agrees with the duality map") {
  auto space = SpaceDescriptor::lp(2, 1.5);
  auto z = make_vec(space, {1.0, -1.0});
  auto e = eval(spec_of(ScaledDualityOp{3.0}), z);
  auto jz = duality_map(z);
  CHECK(e.output[0] == doctest::Approx(3.0 * jz[0]).epsilon(1e-14));
  CHECK(e.output[1] == doctest::Approx(3.0 * jz[1]).epsilon(1e-14));
}

TEST_CASE("antisymmetric linear operator has margin exactly zero") {
  auto space = SpaceDescriptor::lp(2, 2.0);
  // G = [[0,1],[-1,0]]: <u, Gu> = 0 for every u, so
  // <x-y, Gx-Gy> = <x-y, G(x-y)> = 0.
  auto op = spec_of(LinearPsdOp{{{0.0, 1.0}, {-1.0, 0.0}}});
  op.validate(space);
  auto x = make_vec(space, {0.3, -1.2});
  auto y = make_vec(space, {2.0, 0.7});
  auto d = x - y;
  double margin = pairing(d, eval(op, x).output - eval(op, y).output);
  // quadratic-form oracle: d^T G d = d0*d1 - d1*d0
  CHECK(margin == d[0] * d[1] - d[1] * d[0]);
  CHECK(margin == 0.0);
}

TEST_CASE("validate rejects non-PSD symmetric parts and bad scalars") {
  auto space = SpaceDescriptor::lp(2, 2.0);
  CHECK_THROWS_AS(
      spec_of(LinearPsdOp{{{-1.0, 0.0}, {0.0, 1.0}}}).validate(space),
      std::invalid_argument);
  CHECK_THROWS_AS(spec_of(LinearPsdOp{{{1.0, 0.0}}}).validate(space),
                  std::invalid_argument);
  CHECK_THROWS_AS(spec_of(ScaledDualityOp{-1.0}).validate(space),
                  std::invalid_argument);
  CHECK_THROWS_AS(spec_of(SubgradL1Op{-0.5}).validate(space),
                  std::invalid_argument);
  CHECK_THROWS_AS(spec_of(GradQuadraticOp{{0.0, 0.0}, -2.0}).validate(space),
                  std::invalid_argument);
  // PSD boundary case passes
  spec_of(LinearPsdOp{{{1.0, 1.0}, {1.0, 1.0}}}).validate(space);
}

TEST_CASE("domain ball is enforced") {
  auto space = SpaceDescriptor::lp(2, 2.0);
  auto op = spec_of(ZeroOp{});
  op.domain_radius = 1.0;
  auto inside = make_vec(space, {0.6, 0.0});
  auto outside = make_vec(space, {1.5, 0.0});
  eval(op, inside);
  CHECK_THROWS_AS(eval(op, outside), std::domain_error);
}

TEST_CASE("sum of members adds outputs and flags selections") {
  auto space = SpaceDescriptor::lp(2, 2.0);
  SumOp sum;
  sum.members.push_back(spec_of(ConstantOp{{1.0, 2.0}}));
  sum.members.push_back(spec_of(SubgradL1Op{0.5}));
  auto z = make_vec(space, {-4.0, 0.0});
  auto e = eval(spec_of(sum), z);
  CHECK(e.output[0] == 0.5);  // 1 + 0.5*sign(-4)
  CHECK(e.output[1] == 2.0);
  CHECK(e.is_selection);
}

TEST_CASE("solver traits over a spec tree") {
  SumOp sum;
  sum.members.push_back(spec_of(SubgradL1Op{0.25}));
  sum.members.push_back(spec_of(SubgradL1Op{0.75}));
  sum.members.push_back(spec_of(GradQuadraticOp{{0.0, 0.0}, 1.0}));
  auto op = spec_of(sum);
  CHECK_FALSE(is_smooth(op));
  CHECK(l1_weight(op) == 1.0);
  CHECK(has_potential_smooth_part(op));

  auto space = SpaceDescriptor::lp(2, 2.0);
  auto z = make_vec(space, {2.0, -3.0});
  auto smooth = eval_smooth_part(op, z);
  CHECK(smooth[0] == 2.0);
  CHECK(smooth[1] == -3.0);

  auto skew = spec_of(LinearPsdOp{{{1.0, 1.0}, {-1.0, 1.0}}});
  CHECK(is_smooth(skew));
  CHECK_FALSE(has_potential_smooth_part(skew));
}

TEST_CASE("smooth jacobian accumulation") {
  auto space = SpaceDescriptor::lp(2, 2.0);
  SumOp sum;
  sum.members.push_back(spec_of(GradQuadraticOp{{0.0, 0.0}, 2.0}));
  sum.members.push_back(spec_of(LinearPsdOp{{{1.0, 0.5}, {0.5, 1.0}}}));
  auto op = spec_of(sum);
  auto z = make_vec(space, {0.1, 0.2});
  std::vector<double> jac(4, 0.0);
  accumulate_smooth_jacobian(op, z, jac);
  CHECK(jac[0] == 3.0);
  CHECK(jac[1] == 0.5);
  CHECK(jac[2] == 0.5);
  CHECK(jac[3] == 3.0);
}

TEST_CASE("min symmetric eigenvalue") {
  CHECK(min_symmetric_eigenvalue({{2.0, 0.0}, {0.0, 5.0}}) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // symmetric part of [[0,2],[0,0]] is [[0,1],[1,0]] with eigenvalues +-1
  CHECK(min_symmetric_eigenvalue({{0.0, 2.0}, {0.0, 0.0}}) ==
        doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("sampled monotonicity certificates") {
  SamplerConfig sampler;
  sampler.seed = 11;
  sampler.count = 10000;
  sampler.radius = 5.0;

  auto p15 = SpaceDescriptor::lp(3, 1.5);
  auto hilbert = SpaceDescriptor::lp(3, 2.0);

  SumOp sum;
  sum.members.push_back(spec_of(ScaledDualityOp{0.5}));
  sum.members.push_back(spec_of(SubgradL1Op{1.0}));
  sum.members.push_back(spec_of(GradQuadraticOp{{1.0, 0.0, -1.0}, 2.0}));

  for (const auto& [space, op] :
       {std::pair{p15, spec_of(sum)},
        std::pair{hilbert,
                  spec_of(LinearPsdOp{{{1.0, 2.0, 0.0},
                                       {-2.0, 1.0, 0.0},
                                       {0.0, 0.0, 0.0}}})}}) {
    auto report = monotonicity_certificate(op, space, sampler);
    CHECK(report.samples == sampler.count);
    CHECK(report.violations == 0);
    CHECK(report.worst_margin >= -1e-12);
  }
}
