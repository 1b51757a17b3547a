#include <doctest.h>

#include <cmath>

#include "sswave/geometry.hpp"
#include "sswave/harmonics.hpp"
#include "sswave/sampling.hpp"
#include "sswave/sphere_basis.hpp"

using namespace sswave;

TEST_SUITE("harmonics") {

TEST_CASE("analyze then synthesize is the identity on bandlimited fields") {
  const BallGrid grid = ball_grid(12, 6);
  const SphereBasis basis = sphere_basis(grid.sphere, 6);
  const Eigen::VectorXd f = sample_on_ball(grid, [](const Vec3& x) {
    return 1.0 + x[0] - 2.0 * x[1] * x[2] + x.squaredNorm() * x[2];
  });
  const ModalField modal = analyze(grid, basis, f, 6);
  const Eigen::VectorXd back = synthesize(grid, basis, modal);
  CHECK((back - f).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("smooth fields produce rho^l coefficient profiles") {
  const BallGrid grid = ball_grid(12, 6);
  const SphereBasis basis = sphere_basis(grid.sphere, 6);
  const Eigen::VectorXd f = sample_on_ball(grid, [](const Vec3& x) { return x[0] * x[2]; });
  const ModalField modal = analyze(grid, basis, f, 6);
  // x1 x3 is pure degree 2; its radial profiles vanish quadratically at 0.
  for (int l = 0; l <= 6; ++l)
    for (int m = -l; m <= l; ++m) {
      const Eigen::VectorXd prof = modal.radial(l, m);
      if (l != 2) CHECK(prof.cwiseAbs().maxCoeff() < 1e-13);
      CHECK(std::abs(prof[0]) < 1e-13);
    }
}

TEST_CASE("evaluate modal interpolates off the grid") {
  const BallGrid grid = ball_grid(14, 6);
  const SphereBasis basis = sphere_basis(grid.sphere, 6);
  const auto fn = [](const Vec3& x) {
    return x[0] * x[0] - x[1] * x[1] + 0.5 * x[2] * x.squaredNorm();
  };
  const ModalField modal = analyze(grid, basis, sample_on_ball(grid, fn), 6);
  Rng rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 x = random_rapidity(rng, 0.95);
    CHECK(evaluate_modal(grid, modal, x) == doctest::Approx(fn(x)).epsilon(1e-11).scale(1.0));
  }
}

TEST_CASE("pair transforms round trip") {
  const BallGrid grid = ball_grid(10, 4);
  const SphereBasis basis = sphere_basis(grid.sphere, 4);
  Rng rng(7);
  const ModalPair mp = random_modal_pair(grid, rng, 4, 3);
  const StatePair u = synthesize_pair(grid, basis, mp);
  const ModalPair back = analyze_pair(grid, basis, u, 4);
  CHECK((back.c1.coef - mp.c1.coef).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((back.c2.coef - mp.c2.coef).cwiseAbs().maxCoeff() < 1e-12);
}

}  // TEST_SUITE
