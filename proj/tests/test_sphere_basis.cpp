#include <doctest.h>

#include <cmath>

#include "sswave/geometry.hpp"
#include "sswave/harmonics.hpp"
#include "sswave/sphere_basis.hpp"

using namespace sswave;

TEST_SUITE("sphere_basis") {

TEST_CASE("discrete orthonormality") {
  const SphereQuadrature quad = sphere_quadrature(8);
  const SphereBasis basis = sphere_basis(quad, 8);
  const Eigen::MatrixXd gram = basis.Yw.transpose() * basis.Y;
  const int n = sh_count(8);
  CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pointwise evaluation matches the node tables") {
  const SphereQuadrature quad = sphere_quadrature(6);
  const SphereBasis basis = sphere_basis(quad, 6);
  for (const int l : {0, 2, 5}) {
    for (const int m : {-l, 0, l}) {
      const int col = sh_index(l, m);
      for (const int i : {0, 3, 6}) {
        for (const int j : {0, 5, 11}) {
          const int s = i * quad.azimuthal_count() + j;
          const HarmonicValue hv = eval_harmonic(l, m, quad.theta[i], quad.phi[j]);
          CHECK(hv.y == doctest::Approx(basis.Y(s, col)).epsilon(1e-12).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("known low harmonics") {
  // Y00 = 1/sqrt(4 pi); Y10 = sqrt(3/4pi) cos(theta).
  const HarmonicValue y00 = eval_harmonic(0, 0, 1.1, 2.2);
  CHECK(y00.y == doctest::Approx(1.0 / std::sqrt(4.0 * M_PI)).epsilon(1e-14));
  const double th = 0.7;
  const HarmonicValue y10 = eval_harmonic(1, 0, th, 0.3);
  CHECK(y10.y == doctest::Approx(std::sqrt(3.0 / (4.0 * M_PI)) * std::cos(th)).epsilon(1e-14));
  const HarmonicValue y11 = eval_harmonic(1, 1, th, 0.3);
  CHECK(y11.y == doctest::Approx(std::sqrt(2.0) * std::sqrt(3.0 / (8.0 * M_PI)) *
                                 std::sin(th) * std::cos(0.3))
                     .epsilon(1e-13));
}

TEST_CASE("tangential gradient tables differentiate harmonics") {
  // x3 restricted to the sphere is sqrt(4 pi / 3) Y_{1,0}; the tangential
  // gradient of its degree-0 extension is e3 - (omega.e3) omega.
  const SphereQuadrature quad = sphere_quadrature(6);
  const SphereBasis basis = sphere_basis(quad, 6);
  const int col = sh_index(1, 0);
  const double scale = std::sqrt(4.0 * M_PI / 3.0);
  double worst = 0.0;
  for (int s = 0; s < quad.count(); ++s) {
    const Eigen::Vector3d o = quad.omega.row(s).transpose();
    const Eigen::Vector3d exact = Eigen::Vector3d::UnitZ() - o[2] * o;
    const Eigen::Vector3d got(basis.Gx(s, col), basis.Gy(s, col), basis.Gz(s, col));
    worst = std::max(worst, (scale * got - exact).norm());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("laplace beltrami eigenrelation") {
  const SphereQuadrature quad = sphere_quadrature(8);
  CHECK(laplace_beltrami_check(0, 0, quad) < 1e-11);
  CHECK(laplace_beltrami_check(1, 1, quad) < 1e-11);
  CHECK(laplace_beltrami_check(3, -2, quad) < 1e-10);
  CHECK(laplace_beltrami_check(5, 4, quad) < 1e-10);
}

}  // TEST_SUITE
