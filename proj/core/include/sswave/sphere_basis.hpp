#pragma once

#include <Eigen/Dense>

#include "sswave/geometry.hpp"

// Real orthonormal spherical harmonics evaluated on quadrature nodes,
// together with the tables needed for tangential (angular) derivatives.
//
// Convention: Y_{l,0} = Ybar_{l,0}, Y_{l,m>0} = sqrt(2) Ybar_{l,m} cos(m phi),
// Y_{l,m<0} = sqrt(2) Ybar_{l,|m|} sin(|m| phi), where Ybar_{l,m}(theta) is the
// L2-normalized associated Legendre part (no Condon-Shortley sign). The basis
// is orthonormal on the sphere: int Y_{l,m} Y_{l',m'} dsigma = delta delta.

namespace sswave {

// Flat index for (l, m): l*l + (m + l); total (Lmax+1)^2 entries.
inline int sh_index(int l, int m) { return l * l + m + l; }
inline int sh_count(int Lmax) { return (Lmax + 1) * (Lmax + 1); }

struct SphereBasis {
  int Lmax = 0;

  // Node-major tables over the flattened quadrature nodes (rows) and
  // sh_index (columns):
  //   Y   : harmonic values
  //   Gx, Gy, Gz : Cartesian components of the tangential gradient, i.e. the
  //                angular derivative of the degree-0 homogeneous extension.
  Eigen::MatrixXd Y, Gx, Gy, Gz;

  // Analysis operator: Yw = diag(weights) * Y, so coefficients of a field f
  // sampled on the sphere are Yw.transpose() * f.
  Eigen::MatrixXd Yw;

  // Polar-only table for axisymmetric (m = 0) work: values of Ybar_{l,0} at
  // the polar nodes; rows i = 0..L, columns l = 0..Lmax.
  Eigen::MatrixXd P0;

  const Eigen::MatrixXd& tangential(int j) const {
    return j == 0 ? Gx : (j == 1 ? Gy : Gz);
  }
};

// Requires Lmax <= quad.L so that analysis integrals are exact for
// bandlimited fields.
SphereBasis sphere_basis(const SphereQuadrature& quad, int Lmax);

// Pointwise evaluation of a single real harmonic and its spherical-angle
// derivatives at (theta, phi); used for interpolation off the grid.
struct HarmonicValue {
  double y;        // Y_{l,m}
  double dtheta;   // d/dtheta Y_{l,m}
  double dphi;     // d/dphi Y_{l,m}
};
HarmonicValue eval_harmonic(int l, int m, double theta, double phi);

}  // namespace sswave
