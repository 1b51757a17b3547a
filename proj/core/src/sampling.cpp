#include "sswave/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "sswave/sphere_basis.hpp"

namespace sswave {

ModalPair random_modal_pair(const BallGrid& grid, Rng& rng, int Lband, int zdeg) {
  const int N = grid.radial.N;
  const int L = grid.sphere.L;
  if (Lband > L)
    throw std::invalid_argument("random_modal_pair: band limit exceeds the grid");
  if (zdeg < 0 || 2 * zdeg + Lband > 2 * N)
    throw std::invalid_argument("random_modal_pair: radial degree exceeds the grid");

  ModalPair mp(N, L);
  const Eigen::VectorXd& rho = grid.radial.rho;
  for (int l = 0; l <= Lband; ++l) {
    for (int m = -l; m <= l; ++m) {
      const int col = sh_index(l, m);
      for (int comp = 0; comp < 2; ++comp) {
        Eigen::VectorXd prof = Eigen::VectorXd::Zero(N + 1);
        double scale = 1.0;
        for (int j = 0; j <= zdeg; ++j) {
          const double c = scale * rng.normal();
          for (int k = 0; k <= N; ++k)
            prof[k] += c * std::pow(rho[k], l) * std::pow(rho[k] * rho[k], j);
          scale /= 3.0;
        }
        (comp == 0 ? mp.c1 : mp.c2).coef.col(col) = prof;
      }
    }
  }
  return mp;
}

StatePair random_bandlimited_state(const BallGrid& grid, Rng& rng, int Lband, int zdeg) {
  const SphereBasis basis = sphere_basis(grid.sphere, grid.sphere.L);
  return synthesize_pair(grid, basis, random_modal_pair(grid, rng, Lband, zdeg));
}

Vec3 random_rapidity(Rng& rng, double max_norm) {
  for (;;) {
    const Vec3 u(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0,
                 2.0 * rng.uniform() - 1.0);
    if (u.squaredNorm() <= 1.0) return max_norm * u;
  }
}

}  // namespace sswave
