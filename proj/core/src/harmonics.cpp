#include "sswave/harmonics.hpp"

#include <cmath>
#include <stdexcept>

namespace sswave {

ModalField analyze(const BallGrid& grid, const SphereBasis& basis,
                   const Eigen::VectorXd& f, int Lmax) {
  if (Lmax > basis.Lmax)
    throw std::invalid_argument("analyze: Lmax exceeds basis band limit");
  if (Lmax > grid.sphere.L)
    throw std::invalid_argument("analyze: Lmax exceeds quadrature order");
  const int S = grid.sphere.count();
  const int nr = grid.radial.node_count();
  if (int(f.size()) != nr * S)
    throw std::invalid_argument("analyze: field size does not match grid");

  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      F(f.data(), nr, S);
  ModalField out(grid.radial.N, Lmax);
  out.coef = F * basis.Yw.leftCols(sh_count(Lmax));
  return out;
}

Eigen::VectorXd synthesize(const BallGrid& grid, const SphereBasis& basis,
                           const ModalField& modal) {
  const int S = grid.sphere.count();
  const int nr = grid.radial.node_count();
  const int nidx = sh_count(modal.Lmax);
  if (nidx > basis.Y.cols())
    throw std::invalid_argument("synthesize: modal band limit exceeds basis");

  Eigen::MatrixXd F = modal.coef * basis.Y.leftCols(nidx).transpose();  // nr x S
  Eigen::VectorXd f(nr * S);
  for (int k = 0; k < nr; ++k)
    for (int s = 0; s < S; ++s) f[grid.index(k, s)] = F(k, s);
  return f;
}

double evaluate_modal(const BallGrid& grid, const ModalField& modal, const Vec3& x) {
  const double r = x.norm();
  double theta = 0.0, phi = 0.0;
  if (r > 0) {
    theta = std::acos(std::min(1.0, std::max(-1.0, x[2] / r)));
    phi = std::atan2(x[1], x[0]);
  }
  double total = 0.0;
  for (int l = 0; l <= modal.Lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      const Eigen::VectorXd coefs = modal.coef.col(sh_index(l, m));
      if (coefs.lpNorm<Eigen::Infinity>() == 0.0) continue;
      const double radial = barycentric_interpolate(grid.radial.rho, coefs, r);
      total += radial * eval_harmonic(l, m, theta, phi).y;
    }
  }
  return total;
}

double laplace_beltrami_check(int l, int m, const SphereQuadrature& quad) {
  const int Lneed = l + 1;
  if (Lneed > quad.L)
    throw std::invalid_argument("laplace_beltrami_check: quadrature order too low");
  const SphereBasis basis = sphere_basis(quad, Lneed);
  const int S = quad.count();
  const int idx = sh_index(l, m);

  // First tangential derivatives of Y_{l,m} are exact table lookups. Each is
  // a bandlimited function of degree <= l+1, so a second application through
  // analysis is exact up to quadrature roundoff.
  double res = 0.0;
  Eigen::VectorXd lap = Eigen::VectorXd::Zero(S);
  for (int j = 0; j < 3; ++j) {
    const Eigen::VectorXd gj = basis.tangential(j).col(idx);
    // expand gj in harmonics up to l+1 and differentiate again
    const Eigen::VectorXd cj = basis.Yw.transpose() * gj;
    lap += basis.tangential(j) * cj;
  }
  for (int s = 0; s < S; ++s) {
    const double want = -double(l) * (l + 1) * basis.Y(s, idx);
    res = std::max(res, std::abs(lap[s] - want));
  }
  return res;
}

ModalPair analyze_pair(const BallGrid& grid, const SphereBasis& basis,
                       const StatePair& u, int Lmax) {
  ModalPair out;
  out.c1 = analyze(grid, basis, u.f1, Lmax);
  out.c2 = analyze(grid, basis, u.f2, Lmax);
  return out;
}

StatePair synthesize_pair(const BallGrid& grid, const SphereBasis& basis,
                          const ModalPair& m) {
  return {synthesize(grid, basis, m.c1), synthesize(grid, basis, m.c2)};
}

}  // namespace sswave
