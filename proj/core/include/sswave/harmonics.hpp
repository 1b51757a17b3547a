#pragma once

#include <Eigen/Dense>

#include "sswave/geometry.hpp"
#include "sswave/sphere_basis.hpp"

// Spherical-harmonic analysis and synthesis on the sphere and on the ball.
// A scalar on the ball is represented per mode (l,m) by a radial coefficient
// vector u_{l,m}(rho_k); for smooth fields u_{l,m} vanishes like rho^l at the
// origin.

namespace sswave {

struct ModalField {
  int N = 0;     // radial order
  int Lmax = 0;  // angular band limit

  // coef(k, sh_index(l,m)): coefficient of Y_{l,m} at radial node k.
  Eigen::MatrixXd coef;

  ModalField() = default;
  ModalField(int N_, int Lmax_) : N(N_), Lmax(Lmax_) {
    coef.setZero(N + 1, sh_count(Lmax));
  }

  Eigen::VectorXd radial(int l, int m) const { return coef.col(sh_index(l, m)); }
};

// Discrete sphere inner products (f(rho_k .) | Y_{l,m}) per radial shell.
// Requires basis.Lmax <= grid.sphere.L (quadrature exactness).
ModalField analyze(const BallGrid& grid, const SphereBasis& basis,
                   const Eigen::VectorXd& f, int Lmax);

// Left inverse of analyze on bandlimited fields.
Eigen::VectorXd synthesize(const BallGrid& grid, const SphereBasis& basis,
                           const ModalField& modal);

// Evaluate a modal field at an arbitrary point of the closed ball by
// barycentric radial interpolation and pointwise harmonic evaluation.
double evaluate_modal(const BallGrid& grid, const ModalField& modal, const Vec3& x);

// Residual of the Laplace-Beltrami eigenrelation -dslash^j dslash_j Y_{l,m} =
// l(l+1) Y_{l,m}, measured in the sup norm over quadrature nodes. The angular
// Laplacian is applied through the tangential-derivative tables of a basis
// with band limit >= l+1, exercising the same code path used by gradients.
double laplace_beltrami_check(int l, int m, const SphereQuadrature& quad);

// Two-component state on the ball grid, physical samples (radial-major).
struct StatePair {
  Eigen::VectorXd f1, f2;

  StatePair() = default;
  StatePair(Eigen::VectorXd a, Eigen::VectorXd b) : f1(std::move(a)), f2(std::move(b)) {}
  static StatePair zero(const BallGrid& grid) {
    return {Eigen::VectorXd::Zero(grid.node_count()), Eigen::VectorXd::Zero(grid.node_count())};
  }

  StatePair& operator+=(const StatePair& o) {
    f1 += o.f1;
    f2 += o.f2;
    return *this;
  }
  StatePair& operator-=(const StatePair& o) {
    f1 -= o.f1;
    f2 -= o.f2;
    return *this;
  }
  friend StatePair operator+(StatePair a, const StatePair& b) { return a += b; }
  friend StatePair operator-(StatePair a, const StatePair& b) { return a -= b; }
  friend StatePair operator*(double c, StatePair a) {
    a.f1 *= c;
    a.f2 *= c;
    return a;
  }
};

// Two-component modal state.
struct ModalPair {
  ModalField c1, c2;

  ModalPair() = default;
  ModalPair(int N, int Lmax) : c1(N, Lmax), c2(N, Lmax) {}
};

ModalPair analyze_pair(const BallGrid& grid, const SphereBasis& basis,
                       const StatePair& u, int Lmax);
StatePair synthesize_pair(const BallGrid& grid, const SphereBasis& basis,
                          const ModalPair& m);

}  // namespace sswave
