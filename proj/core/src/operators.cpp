#include "lpres/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpres {

namespace {

void check_in_domain(const MonotoneOperatorSpec& op, const PrimalVector& z) {
  if (std::isfinite(op.domain_radius) && norm(z) > op.domain_radius * (1.0 + 1e-12)) {
    throw std::domain_error("evaluation point lies outside the operator domain ball");
  }
}

std::vector<double> matvec(const std::vector<std::vector<double>>& m,
                           const std::vector<double>& v) {
  std::vector<double> out(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      out[i] += m[i][j] * v[j];
    }
  }
  return out;
}

struct EvalVisitor {
  const PrimalVector& z;
  bool include_subgrad = true;

  std::pair<std::vector<double>, bool> operator()(const ZeroOp&) const {
    return {std::vector<double>(z.dim(), 0.0), false};
  }
  std::pair<std::vector<double>, bool> operator()(const ConstantOp& op) const {
    return {op.c, false};
  }
  std::pair<std::vector<double>, bool> operator()(const LinearPsdOp& op) const {
    return {matvec(op.matrix, z.coords), false};
  }
  std::pair<std::vector<double>, bool> operator()(const ScaledDualityOp& op) const {
    DualVector j = duality_map(z);
    for (double& c : j.coords) c *= op.lambda;
    return {std::move(j.coords), false};
  }
  std::pair<std::vector<double>, bool> operator()(const GradQuadraticOp& op) const {
    std::vector<double> out(z.dim());
    for (std::size_t i = 0; i < z.dim(); ++i) {
      out[i] = op.lambda * (z.coords[i] - op.b[i]);
    }
    return {std::move(out), false};
  }
  std::pair<std::vector<double>, bool> operator()(const SubgradL1Op& op) const {
    std::vector<double> out(z.dim(), 0.0);
    bool selection = false;
    if (!include_subgrad) return {std::move(out), false};
    for (std::size_t i = 0; i < z.dim(); ++i) {
      double c = z.coords[i];
      if (c > 0.0) {
        out[i] = op.gamma;
      } else if (c < 0.0) {
        out[i] = -op.gamma;
      } else if (op.gamma > 0.0) {
        selection = true;  // sign(0) := 0 selected at the kink
      }
    }
    return {std::move(out), selection};
  }
  std::pair<std::vector<double>, bool> operator()(const SumOp& op) const {
    std::vector<double> out(z.dim(), 0.0);
    bool selection = false;
    for (const auto& member : op.members) {
      auto [part, sel] = std::visit(EvalVisitor{z, include_subgrad}, member.variant);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += part[i];
      selection = selection || sel;
    }
    return {std::move(out), selection};
  }
};

void validate_variant(const OperatorVariant& v, const SpaceDescriptor& space) {
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, ConstantOp>) {
          if (op.c.size() != space.dim) {
            throw std::invalid_argument("constant operator dimension mismatch");
          }
        } else if constexpr (std::is_same_v<T, LinearPsdOp>) {
          if (op.matrix.size() != space.dim) {
            throw std::invalid_argument("linear_psd matrix dimension mismatch");
          }
          for (const auto& row : op.matrix) {
            if (row.size() != space.dim) {
              throw std::invalid_argument("linear_psd matrix is not square");
            }
          }
          if (min_symmetric_eigenvalue(op.matrix) < -1e-10) {
            throw std::invalid_argument(
                "linear_psd symmetric part has a negative eigenvalue");
          }
        } else if constexpr (std::is_same_v<T, ScaledDualityOp>) {
          if (op.lambda < 0.0) {
            throw std::invalid_argument("scaled_duality lambda must be >= 0");
          }
        } else if constexpr (std::is_same_v<T, GradQuadraticOp>) {
          if (op.b.size() != space.dim) {
            throw std::invalid_argument("grad_quadratic center dimension mismatch");
          }
          if (op.lambda < 0.0) {
            throw std::invalid_argument("grad_quadratic lambda must be >= 0");
          }
        } else if constexpr (std::is_same_v<T, SubgradL1Op>) {
          if (op.gamma < 0.0) {
            throw std::invalid_argument("subgrad_l1 gamma must be >= 0");
          }
        } else if constexpr (std::is_same_v<T, SumOp>) {
          for (const auto& member : op.members) {
            member.validate(space);
          }
        }
      },
      v);
}

}  // namespace

double min_symmetric_eigenvalue(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  // symmetric part, then cyclic Jacobi rotations
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a[i][j] = 0.5 * (m[i][j] + m[j][i]);
    }
  }
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        double c = std::cos(theta), s = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  double min_ev = a[0][0];
  for (std::size_t i = 1; i < n; ++i) min_ev = std::min(min_ev, a[i][i]);
  return min_ev;
}

void MonotoneOperatorSpec::validate(const SpaceDescriptor& space) const {
  if (!(domain_radius > 0.0)) {
    throw std::invalid_argument("domain radius must be positive");
  }
  validate_variant(variant, space);
}

OperatorEvaluation eval(const MonotoneOperatorSpec& op, const PrimalVector& z) {
  check_in_domain(op, z);
  auto [coords, selection] = std::visit(EvalVisitor{z, true}, op.variant);
  return OperatorEvaluation{z, DualVector(std::move(coords), z.space), selection};
}

InequalityReport monotonicity_certificate(const MonotoneOperatorSpec& op,
                                          const SpaceDescriptor& space,
                                          const SamplerConfig& sampler) {
  InequalityReport report;
  report.check_name = "monotonicity";
  Sampler gen(space, derive_seed(sampler.seed, 0x6d6f6e6f));
  double radius = std::isfinite(op.domain_radius)
                      ? std::min(op.domain_radius, sampler.radius)
                      : sampler.radius;
  double worst = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  for (std::size_t k = 0; k < sampler.count; ++k) {
    PrimalVector x = gen.ball_point(radius);
    PrimalVector y = gen.ball_point(radius);
    DualVector ax = eval(op, x).output;
    DualVector ay = eval(op, y).output;
    double margin = pairing(x - y, ax - ay);
    scale = std::max({scale, std::abs(margin), dual_norm(ax - ay) * norm(x - y)});
    worst = std::min(worst, margin);
    if (margin < -1e-10 * scale) ++report.violations;
    ++report.samples;
  }
  report.worst_margin = (report.samples > 0) ? worst : 0.0;
  report.details["scale"] = format_double(scale);
  return report;
}

bool is_smooth(const MonotoneOperatorSpec& op) { return l1_weight(op) == 0.0; }

double l1_weight(const MonotoneOperatorSpec& op) {
  if (const auto* l1 = std::get_if<SubgradL1Op>(&op.variant)) {
    return l1->gamma;
  }
  if (const auto* sum = std::get_if<SumOp>(&op.variant)) {
    double total = 0.0;
    for (const auto& member : sum->members) total += l1_weight(member);
    return total;
  }
  return 0.0;
}

DualVector eval_smooth_part(const MonotoneOperatorSpec& op, const PrimalVector& z) {
  auto [coords, selection] = std::visit(EvalVisitor{z, false}, op.variant);
  (void)selection;
  return DualVector(std::move(coords), z.space);
}

bool has_potential_smooth_part(const MonotoneOperatorSpec& op) {
  if (const auto* lin = std::get_if<LinearPsdOp>(&op.variant)) {
    const auto& g = lin->matrix;
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        if (std::abs(g[i][j] - g[j][i]) > 1e-12 * (1.0 + std::abs(g[i][j]))) {
          return false;
        }
      }
    }
    return true;
  }
  if (const auto* sum = std::get_if<SumOp>(&op.variant)) {
    return std::all_of(sum->members.begin(), sum->members.end(),
                       [](const auto& m) { return has_potential_smooth_part(m); });
  }
  return true;
}

void accumulate_smooth_jacobian(const MonotoneOperatorSpec& op, const PrimalVector& z,
                                std::vector<double>& jac) {
  const std::size_t n = z.dim();
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, LinearPsdOp>) {
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
              jac[i * n + j] += v.matrix[i][j];
            }
          }
        } else if constexpr (std::is_same_v<T, ScaledDualityOp>) {
          std::vector<double> dj;
          duality_map_jacobian(z, dj);
          for (std::size_t k = 0; k < n * n; ++k) jac[k] += v.lambda * dj[k];
        } else if constexpr (std::is_same_v<T, GradQuadraticOp>) {
          for (std::size_t i = 0; i < n; ++i) jac[i * n + i] += v.lambda;
        } else if constexpr (std::is_same_v<T, SumOp>) {
          for (const auto& member : v.members) {
            accumulate_smooth_jacobian(member, z, jac);
          }
        }
        // ZeroOp, ConstantOp: zero Jacobian; SubgradL1Op: excluded by contract.
      },
      op.variant);
}

}  // namespace lpres
