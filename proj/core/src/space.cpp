#include "lpres/space.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lpres {

namespace {

void require_finite(const std::vector<double>& coords) {
  for (double c : coords) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("vector has non-finite entry");
    }
  }
}

void require_same_space(const SpaceDescriptor& a, const SpaceDescriptor& b) {
  if (!(a == b)) {
    throw std::invalid_argument("space mismatch: dim/p disagree");
  }
}

double lp_norm(const std::vector<double>& coords, double p) {
  double sum = 0.0;
  for (double c : coords) {
    sum += std::pow(std::abs(c), p);
  }
  return std::pow(sum, 1.0 / p);
}

// Coordinates of the duality map of an l_p space: ||v||^{2-p} |v_i|^{p-1} sgn(v_i).
// At v = 0 the map is 0; for p < 2 a zero coordinate contributes 0 (limit value).
std::vector<double> duality_coords(const std::vector<double>& coords, double p) {
  double nrm = lp_norm(coords, p);
  std::vector<double> out(coords.size(), 0.0);
  if (nrm == 0.0) {
    return out;
  }
  double scale = std::pow(nrm, 2.0 - p);
  for (std::size_t i = 0; i < coords.size(); ++i) {
    double c = coords[i];
    if (c != 0.0) {
      out[i] = scale * std::pow(std::abs(c), p - 1.0) * (c > 0.0 ? 1.0 : -1.0);
    }
  }
  return out;
}

}  // namespace

SpaceDescriptor SpaceDescriptor::lp(std::size_t dim, double p) {
  if (dim == 0) {
    throw std::invalid_argument("dimension must be positive");
  }
  if (!(p > 1.0) || !std::isfinite(p)) {
    throw std::invalid_argument("exponent must exceed 1 and be finite");
  }
  SpaceDescriptor s;
  s.dim = dim;
  s.p = p;
  s.p_conj = p / (p - 1.0);
  s.q_smooth = std::min(p, 2.0);
  if (std::abs(1.0 / s.p + 1.0 / s.p_conj - 1.0) > 1e-12) {
    throw std::logic_error("conjugate exponent identity violated");
  }
  return s;
}

SpaceDescriptor SpaceDescriptor::conjugate() const {
  return SpaceDescriptor::lp(dim, p_conj);
}

PrimalVector::PrimalVector(std::vector<double> c, const SpaceDescriptor& s)
    : coords(std::move(c)), space(s) {
  if (coords.size() != space.dim) {
    throw std::invalid_argument("coordinate count does not match space dimension");
  }
  require_finite(coords);
}

DualVector::DualVector(std::vector<double> c, const SpaceDescriptor& s)
    : coords(std::move(c)), space(s) {
  if (coords.size() != space.dim) {
    throw std::invalid_argument("coordinate count does not match space dimension");
  }
  require_finite(coords);
}

PrimalVector zero_primal(const SpaceDescriptor& space) {
  return PrimalVector(std::vector<double>(space.dim, 0.0), space);
}

DualVector zero_dual(const SpaceDescriptor& space) {
  return DualVector(std::vector<double>(space.dim, 0.0), space);
}

PrimalVector operator+(const PrimalVector& a, const PrimalVector& b) {
  require_same_space(a.space, b.space);
  std::vector<double> c(a.coords);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords[i];
  return PrimalVector(std::move(c), a.space);
}

PrimalVector operator-(const PrimalVector& a, const PrimalVector& b) {
  require_same_space(a.space, b.space);
  std::vector<double> c(a.coords);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords[i];
  return PrimalVector(std::move(c), a.space);
}

PrimalVector operator*(double s, const PrimalVector& v) {
  std::vector<double> c(v.coords);
  for (double& x : c) x *= s;
  return PrimalVector(std::move(c), v.space);
}

DualVector operator+(const DualVector& a, const DualVector& b) {
  require_same_space(a.space, b.space);
  std::vector<double> c(a.coords);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords[i];
  return DualVector(std::move(c), a.space);
}

DualVector operator-(const DualVector& a, const DualVector& b) {
  require_same_space(a.space, b.space);
  std::vector<double> c(a.coords);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords[i];
  return DualVector(std::move(c), a.space);
}

DualVector operator*(double s, const DualVector& u) {
  std::vector<double> c(u.coords);
  for (double& x : c) x *= s;
  return DualVector(std::move(c), u.space);
}

double norm(const PrimalVector& v) { return lp_norm(v.coords, v.space.p); }

double dual_norm(const DualVector& u) { return lp_norm(u.coords, u.space.p_conj); }

double pairing(const PrimalVector& x, const DualVector& u) {
  require_same_space(x.space, u.space);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    sum += x.coords[i] * u.coords[i];
  }
  return sum;
}

DualVector duality_map(const PrimalVector& x) {
  return DualVector(duality_coords(x.coords, x.space.p), x.space);
}

PrimalVector inverse_duality_map(const DualVector& u) {
  return PrimalVector(duality_coords(u.coords, u.space.p_conj), u.space);
}

double bregman_phi(const PrimalVector& x, const PrimalVector& y) {
  require_same_space(x.space, y.space);
  double nx = norm(x);
  double ny = norm(y);
  double value = nx * nx - 2.0 * pairing(x, duality_map(y)) + ny * ny;
  return value < 0.0 ? 0.0 : value;
}

void duality_map_jacobian(const PrimalVector& x, std::vector<double>& jac) {
  const std::size_t n = x.dim();
  const double p = x.space.p;
  jac.assign(n * n, 0.0);
  double nrm = norm(x);
  if (nrm == 0.0) {
    for (std::size_t i = 0; i < n; ++i) jac[i * n + i] = 1.0;
    return;
  }
  std::vector<double> psi(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double c = x.coords[i];
    if (c != 0.0) {
      psi[i] = std::pow(std::abs(c), p - 1.0) * (c > 0.0 ? 1.0 : -1.0);
    }
  }
  double outer_scale = (2.0 - p) * std::pow(nrm, 2.0 - 2.0 * p);
  double diag_scale = (p - 1.0) * std::pow(nrm, 2.0 - p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      jac[i * n + j] = outer_scale * psi[i] * psi[j];
    }
    double c = std::abs(x.coords[i]);
    if (c != 0.0) {
      jac[i * n + i] += diag_scale * std::pow(c, p - 2.0);
    } else if (p == 2.0) {
      jac[i * n + i] += diag_scale;
    }
    // p < 2 with x_i = 0: the diagonal term diverges; leave it at the outer
    // contribution and let Newton's damping regularize.
  }
}

}  // namespace lpres
