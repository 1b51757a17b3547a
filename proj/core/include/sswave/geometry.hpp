#pragma once

#include <Eigen/Dense>

// Grids, differentiation matrices, and quadrature on [0,1], the unit sphere,
// and the unit ball. Everything here is immutable after construction and safe
// to share read-only between threads.

namespace sswave {

using Vec3 = Eigen::Vector3d;

// Chebyshev-Gauss-Lobatto collocation grid mapped to [0,1].
//
// Nodes ascend: rho_0 = 0, rho_N = 1. D1 and D2 are dense spectral
// differentiation matrices (exact on polynomials of degree <= N), w are
// Clenshaw-Curtis weights for integration over [0,1] (sum 1).
struct RadialGrid {
  int N = 0;
  Eigen::VectorXd rho;
  Eigen::MatrixXd D1;
  Eigen::MatrixXd D2;
  Eigen::VectorXd w;

  int node_count() const { return N + 1; }
};

// N must be even and at least 8 for production use; the lower bound is not
// enforced here so that tiny grids remain available to tests.
RadialGrid chebyshev_lobatto_grid(int N);

// Barycentric differentiation matrices for an arbitrary set of distinct
// nodes. Weights are computed with log scaling so heavily clustered node
// sets (for example images of Chebyshev nodes under squaring) do not
// underflow. Returns D1 if order==1, the second-derivative matrix if
// order==2.
Eigen::MatrixXd barycentric_diff_matrix(const Eigen::VectorXd& nodes, int order);

// Interpolate samples given at `nodes` to the point x (barycentric formula).
double barycentric_interpolate(const Eigen::VectorXd& nodes,
                               const Eigen::VectorXd& values, double x);

// Product quadrature on the unit sphere: Gauss-Legendre in cos(theta)
// (L+1 polar nodes) times a uniform azimuthal grid (2L+1 nodes). Exactly
// integrates spherical polynomials well past degree 2L; weights sum to 4*pi.
//
// Flattened node index: s = i*(2L+1) + j for (theta_i, phi_j).
struct SphereQuadrature {
  int L = 0;
  Eigen::VectorXd theta;   // size L+1
  Eigen::VectorXd ctheta;  // cos(theta), Gauss-Legendre nodes in (-1,1)
  Eigen::VectorXd wtheta;  // Gauss-Legendre weights, sum 2
  Eigen::VectorXd phi;     // size 2L+1, uniform on [0, 2*pi)

  Eigen::VectorXd weight;                       // per flattened node, sum 4*pi
  Eigen::Matrix<double, Eigen::Dynamic, 3> omega;  // unit vectors per node

  int polar_count() const { return L + 1; }
  int azimuthal_count() const { return 2 * L + 1; }
  int count() const { return polar_count() * azimuthal_count(); }
};

SphereQuadrature sphere_quadrature(int L);

// Gauss-Legendre rule with n nodes on (-1,1); weights sum to 2.
void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights);

// Tensor grid on the closed unit ball. Scalar fields are stored flattened
// with radial-major layout: value(k, s) at index k*sphere.count() + s.
struct BallGrid {
  RadialGrid radial;
  SphereQuadrature sphere;

  int node_count() const { return radial.node_count() * sphere.count(); }
  int index(int k, int s) const { return k * sphere.count() + s; }
  Vec3 node(int k, int s) const { return radial.rho[k] * sphere.omega.row(s).transpose(); }
};

BallGrid ball_grid(int N, int L);

// Volume integral over the unit ball: sum_k w_k rho_k^2 sum_s weight_s f.
double integrate_ball(const BallGrid& grid, const Eigen::VectorXd& f);

// Surface integral over the boundary sphere rho = 1 of a ball field
// (uses the outermost radial shell).
double integrate_boundary(const BallGrid& grid, const Eigen::VectorXd& f);

// Sample a callable at every grid node (radial-major layout).
template <typename F>
Eigen::VectorXd sample_on_ball(const BallGrid& grid, F&& f) {
  const int S = grid.sphere.count();
  Eigen::VectorXd out(grid.node_count());
  for (int k = 0; k <= grid.radial.N; ++k)
    for (int s = 0; s < S; ++s) out[grid.index(k, s)] = f(grid.node(k, s));
  return out;
}

// Cartesian gradient of a scalar sampled on the ball grid, assembled from
// the radial derivative along rays and tangential derivatives of the
// spherical-harmonic expansion per shell. Columns are (d1 f, d2 f, d3 f).
// Exact on polynomial fields whose angular band limit fits the quadrature.
Eigen::MatrixXd gradient_on_ball(const BallGrid& grid, const Eigen::VectorXd& f);

}  // namespace sswave
