#pragma once

#include <cstddef>
#include <vector>

namespace lpres {

/// Finite-dimensional l_p space, 1 < p < inf.  Carries the conjugate
/// exponent and the smoothness order q = min(p, 2) used by the
/// theorem-regime checks (admissible only for 1 < p <= 2).
struct SpaceDescriptor {
  std::size_t dim = 0;
  double p = 2.0;
  double p_conj = 2.0;
  double q_smooth = 2.0;
  double K_est = 0.0;  // empirical smoothness constant, filled in by estimation

  static SpaceDescriptor lp(std::size_t dim, double p);

  /// Conjugate space: l_{p'} of the same dimension.
  SpaceDescriptor conjugate() const;

  bool theorem_regime() const { return p > 1.0 && p <= 2.0; }

  friend bool operator==(const SpaceDescriptor& a, const SpaceDescriptor& b) {
    return a.dim == b.dim && a.p == b.p;
  }
};

struct SpaceMismatchError;

/// Coordinate vector in E.  The norm is the l_p norm of its space.
struct PrimalVector {
  std::vector<double> coords;
  SpaceDescriptor space;

  PrimalVector() = default;
  PrimalVector(std::vector<double> coords, const SpaceDescriptor& space);

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  double& operator[](std::size_t i) { return coords[i]; }
};

/// Coordinate vector in E*.  The norm is the l_{p'} norm.
struct DualVector {
  std::vector<double> coords;
  SpaceDescriptor space;

  DualVector() = default;
  DualVector(std::vector<double> coords, const SpaceDescriptor& space);

  std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t i) const { return coords[i]; }
  double& operator[](std::size_t i) { return coords[i]; }
};

PrimalVector zero_primal(const SpaceDescriptor& space);
DualVector zero_dual(const SpaceDescriptor& space);

PrimalVector operator+(const PrimalVector& a, const PrimalVector& b);
PrimalVector operator-(const PrimalVector& a, const PrimalVector& b);
PrimalVector operator*(double s, const PrimalVector& v);
DualVector operator+(const DualVector& a, const DualVector& b);
DualVector operator-(const DualVector& a, const DualVector& b);
DualVector operator*(double s, const DualVector& u);

double norm(const PrimalVector& v);
double dual_norm(const DualVector& u);

/// <x, u> = sum x_i u_i.  Throws on space mismatch.
double pairing(const PrimalVector& x, const DualVector& u);

/// Normalized duality map J: E -> E*.  Closed form
/// (Jx)_i = ||x||^{2-p} |x_i|^{p-1} sgn(x_i), with J(0) = 0.
DualVector duality_map(const PrimalVector& x);

/// J^{-1}: E* -> E, the duality map of the conjugate space read back
/// into primal coordinates.
PrimalVector inverse_duality_map(const DualVector& u);

/// phi(x, y) = ||x||^2 - 2<x, Jy> + ||y||^2, clamped at 0 against roundoff.
double bregman_phi(const PrimalVector& x, const PrimalVector& y);

/// Row-major n x n Jacobian of J at x.  Diagonal terms carrying
/// |x_i|^{p-2} with x_i = 0 and p < 2 are set to 0 (the solver's Tikhonov
/// damping covers the singular rows); at x = 0 the identity is returned.
void duality_map_jacobian(const PrimalVector& x, std::vector<double>& jac);

}  // namespace lpres
