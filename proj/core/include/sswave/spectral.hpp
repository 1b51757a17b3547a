#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sswave/geometry.hpp"

// Collocation discretization of the linearized similarity-flow generator,
// its eigendecomposition, two-resolution spurious-mode filtering, and Riesz
// spectral projections.
//
// Representation. For a fixed azimuthal sector m, a state is a stack of
// blocks, one per spherical degree ell = m..Lmax. Each block carries the two
// components of the radial profile in regularized form: the physical radial
// profile u(rho) of a smooth mode behaves like rho^ell at the origin, so the
// block stores v with u(rho) = rho^ell v(rho^2) collocated at z_k = rho_k^2,
// where rho_k are the Chebyshev-Lobatto nodes shared with BallGrid. The
// substitution removes both the origin factor and the even/odd parity
// constraint, keeps every operator entry polynomial in z, and never divides
// sampled data by rho^ell. Converting back is a multiplication
// (block_to_radial), which is exact and loses no accuracy at clustered nodes.

namespace sswave {

using Complex = std::complex<double>;

struct ModeOperator {
  double p = 5.0;
  double a3 = 0.0;  // rapidity of the potential boost along the third axis
  int N = 0;        // radial collocation order per block
  int m = 0;        // azimuthal sector
  std::vector<int> ells;  // spherical degree per block, ascending

  // Radial nodes rho_k = sin(pi k / 2N), chosen so the z = rho^2 collocation
  // nodes form a Chebyshev-Lobatto grid on [0,1]. Differentiating in z on a
  // graded image grid instead would be catastrophically ill conditioned.
  Eigen::VectorXd rho;  // size N+1, ascending, rho[0] = 0, rho[N] = 1
  Eigen::VectorXd z;    // z = rho^2 collocation nodes
  Eigen::MatrixXd mat;  // dense generator, size() x size()

  int block_size() const { return 2 * (N + 1); }
  int blocks() const { return static_cast<int>(ells.size()); }
  int size() const { return block_size() * blocks(); }
  // comp 0 is the first field component, comp 1 the second.
  int index(int block, int comp, int node) const {
    return block * block_size() + comp * (N + 1) + node;
  }
};

// Single-degree block of the linearization at the unboosted profile; the
// potential is the constant 2p(p+1)/(p-1)^2. Requires N >= 16.
ModeOperator assemble_mode_operator(double p, int ell, int N);

// All degrees ell = m..Lmax of one azimuthal sector, linearized at the
// profile boosted along the third axis. The boosted potential couples
// degrees within the sector; coupling entries come from the geometric
// series of the squared inverse boost factor, truncated once the term bound
// (k+1) beta^k drops below 1e-17, so no term is ever formed by dividing
// quadrature data. Requires N >= 16, |a3| <= 0.3, 0 <= m <= Lmax.
ModeOperator assemble_axisym_operator(double p, double a3, int N, int Lmax, int m = 0);

struct Eigenpair {
  Complex value;
  Eigen::VectorXcd vector;  // unit norm, largest component rotated positive
};

// Dense eigendecomposition with Parlett-Reinsch balancing. Pairs are sorted
// by descending real part. left_eigenpairs returns transpose-sense left
// eigenvectors: w satisfies w^T M = lambda w^T (no conjugation).
std::vector<Eigenpair> eigenpairs(const ModeOperator& op);
std::vector<Eigenpair> left_eigenpairs(const ModeOperator& op);

inline std::vector<Complex> eigenvalues_of(const std::vector<Eigenpair>& pairs) {
  std::vector<Complex> v;
  v.reserve(pairs.size());
  for (const auto& e : pairs) v.push_back(e.value);
  return v;
}

// Two-resolution filtering: a coarse eigenvalue is kept only if the fine
// run reproduces it within tol. gap_margin is
//   max Re(lambda) + 1.5/(p-1)
// over stable eigenvalues away from the symmetry eigenvalues 1 and 0
// (distance > 1e-3); nonpositive margin certifies the spectral gap. With no
// such eigenvalue the margin is -inf.
struct SpectrumReport {
  std::vector<Complex> stable;
  std::vector<Complex> discarded;
  double p = 0.0;
  double gap_margin = 0.0;
};

SpectrumReport filter_spurious(const std::vector<Complex>& coarse,
                               const std::vector<Complex>& fine, double p,
                               double tol = 1e-7);

// Spectral projection onto the invariant subspace for the eigenvalues inside
// a disk, built from matched right and left eigenvectors. rank() == 0 means
// the disk contains no spectrum; apply then returns zero.
struct RieszProjection {
  Complex eigenvalue{0.0, 0.0};  // cluster mean
  Eigen::MatrixXcd range;        // n x r
  Eigen::MatrixXcd left;         // n x r, normalized so left^T range = I

  int rank() const { return static_cast<int>(range.cols()); }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
  Eigen::MatrixXcd matrix() const;  // range * left^T (or zero if empty)
};

RieszProjection riesz_projection(const ModeOperator& op, Complex center, double radius);

// P projects onto the eigenvalue-1 direction (profile scaling/time
// translation), Q onto the eigenvalue-0 directions present in the sector
// (boost tangents). Disk radius 0.1 around each.
struct ProjectionSet {
  RieszProjection P;
  RieszProjection Q;
};

ProjectionSet riesz_projections(const ModeOperator& op);

// x - Px - Qx, the stable-subspace component.
Eigen::VectorXcd apply_complement(const ProjectionSet& ps, const Eigen::VectorXcd& x);

// Contour cross-check of a Riesz projection: trapezoidal quadrature of the
// resolvent over a circle (midpoint phases, so nodes avoid the real axis).
Eigen::MatrixXcd contour_projection(const ModeOperator& op, Complex center,
                                    double radius, int nodes = 16);

// Runge-Kutta propagator for d/dtau x = M x in the operator's own
// representation. dtau <= 0 selects a step well inside the stability region.
Eigen::VectorXcd propagate(const ModeOperator& op, const Eigen::VectorXcd& x0,
                           double tau, double dtau = 0.0);

// Physical radial samples rho_k^ell v(z_k) of one block component; the nodes
// are the operator's rho grid, which matches ball_grid(N, L).radial.
Eigen::VectorXcd block_to_radial(const ModeOperator& op, const Eigen::VectorXcd& vec,
                                 int block, int comp);

}  // namespace sswave
