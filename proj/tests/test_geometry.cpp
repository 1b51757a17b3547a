#include <doctest.h>

#include <cmath>

#include "sswave/geometry.hpp"

using namespace sswave;

TEST_SUITE("geometry") {

TEST_CASE("chebyshev lobatto grid endpoints and ordering") {
  const RadialGrid g = chebyshev_lobatto_grid(12);
  CHECK(g.node_count() == 13);
  CHECK(g.rho[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g.rho[12] == doctest::Approx(1.0).epsilon(1e-15));
  for (int k = 0; k + 1 <= 12; ++k) CHECK(g.rho[k] < g.rho[k + 1]);
}

TEST_CASE("differentiation matrices are exact on polynomials") {
  const RadialGrid g = chebyshev_lobatto_grid(12);
  Eigen::VectorXd f(13), df(13), ddf(13);
  for (int k = 0; k <= 12; ++k) {
    const double r = g.rho[k];
    f[k] = std::pow(r, 5) - 2.0 * std::pow(r, 3) + r;
    df[k] = 5.0 * std::pow(r, 4) - 6.0 * r * r + 1.0;
    ddf[k] = 20.0 * std::pow(r, 3) - 12.0 * r;
  }
  CHECK((g.D1 * f - df).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((g.D2 * f - ddf).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("clenshaw curtis weights integrate monomials") {
  const RadialGrid g = chebyshev_lobatto_grid(16);
  for (const int k : {0, 1, 2, 7, 12, 16}) {
    double s = 0.0;
    for (int i = 0; i <= 16; ++i) s += g.w[i] * std::pow(g.rho[i], k);
    CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
  }
}

TEST_CASE("barycentric differentiation on squared half-grid nodes") {
  // Squaring the nodes rho_k = sin(pi k / 2N) lands back on a Chebyshev
  // grid in z, so differentiation there stays well conditioned. (Squaring
  // a grid that already spans [0,1] instead produces a quartically graded
  // mesh whose differentiation matrix is useless in double precision; the
  // radial blocks of the stability operator rely on this node choice.)
  const int N = 20;
  Eigen::VectorXd z(N + 1);
  for (int k = 0; k <= N; ++k) {
    const double r = std::sin(0.5 * M_PI * k / N);
    z[k] = r * r;
  }
  const Eigen::MatrixXd Dz = barycentric_diff_matrix(z, 1);
  Eigen::VectorXd f(N + 1), df(N + 1);
  for (int k = 0; k <= N; ++k) {
    f[k] = std::pow(z[k], 4) - 3.0 * z[k];
    df[k] = 4.0 * std::pow(z[k], 3) - 3.0;
  }
  CHECK((Dz * f - df).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("barycentric interpolation reproduces polynomials") {
  const RadialGrid g = chebyshev_lobatto_grid(10);
  Eigen::VectorXd f(11);
  for (int k = 0; k <= 10; ++k) f[k] = 3.0 * std::pow(g.rho[k], 4) - g.rho[k];
  for (const double x : {0.0, 0.123, 0.5, 0.987, 1.0}) {
    CHECK(barycentric_interpolate(g.rho, f, x) ==
          doctest::Approx(3.0 * std::pow(x, 4) - x).epsilon(1e-13));
  }
}

TEST_CASE("gauss legendre rule") {
  Eigen::VectorXd x, w;
  gauss_legendre(8, x, w);
  CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
  double s4 = 0.0;
  for (int i = 0; i < 8; ++i) s4 += w[i] * std::pow(x[i], 4);
  CHECK(s4 == doctest::Approx(2.0 / 5.0).epsilon(1e-14));
}

TEST_CASE("sphere quadrature moments") {
  const SphereQuadrature q = sphere_quadrature(6);
  CHECK(q.weight.sum() == doctest::Approx(4.0 * M_PI).epsilon(1e-13));
  Eigen::Matrix3d second = Eigen::Matrix3d::Zero();
  for (int s = 0; s < q.count(); ++s) {
    const Eigen::Vector3d o = q.omega.row(s).transpose();
    second += q.weight[s] * o * o.transpose();
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(second(i, j) ==
            doctest::Approx(i == j ? 4.0 * M_PI / 3.0 : 0.0).epsilon(1e-12).scale(1.0));
}

TEST_CASE("ball integration and boundary integral") {
  const BallGrid grid = ball_grid(12, 4);
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(grid.node_count());
  CHECK(integrate_ball(grid, one) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-13));
  const Eigen::VectorXd r2 = sample_on_ball(grid, [](const Vec3& x) { return x.squaredNorm(); });
  CHECK(integrate_ball(grid, r2) == doctest::Approx(4.0 * M_PI / 5.0).epsilon(1e-13));
  CHECK(integrate_boundary(grid, r2) == doctest::Approx(4.0 * M_PI).epsilon(1e-13));
}

TEST_CASE("cartesian gradient on the ball is exact on polynomials") {
  const BallGrid grid = ball_grid(12, 6);
  const Eigen::VectorXd f =
      sample_on_ball(grid, [](const Vec3& x) { return x[0] * x[0] * x[2] + 2.0 * x[1]; });
  const Eigen::MatrixXd grad = gradient_on_ball(grid, f);
  double worst = 0.0;
  for (int k = 0; k <= grid.radial.N; ++k)
    for (int s = 0; s < grid.sphere.count(); ++s) {
      const Vec3 x = grid.node(k, s);
      const Vec3 exact(2.0 * x[0] * x[2], 2.0, x[0] * x[0]);
      worst = std::max(worst, (grad.row(grid.index(k, s)).transpose() - exact).norm());
    }
  CHECK(worst < 1e-10);
}

}  // TEST_SUITE
