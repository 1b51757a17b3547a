#include <doctest.h>

#include <cmath>

#include "sswave/energy.hpp"
#include "sswave/evolve.hpp"
#include "sswave/family.hpp"
#include "sswave/geometry.hpp"
#include "sswave/sampling.hpp"
#include "sswave/sphere_basis.hpp"

using namespace sswave;

namespace {

double rel_l2(const BallGrid& grid, const StatePair& r, const StatePair& ref) {
  const double num =
      integrate_ball(grid, r.f1.cwiseAbs2()) + integrate_ball(grid, r.f2.cwiseAbs2());
  const double den =
      integrate_ball(grid, ref.f1.cwiseAbs2()) + integrate_ball(grid, ref.f2.cwiseAbs2());
  return std::sqrt(num / den);
}

}  // namespace

TEST_SUITE("family") {

TEST_CASE("profile amplitude") {
  // c_p^{p-1} = 2(p+1)/(p-1)^2.
  for (const double p : {4.0, 5.0, 7.0}) {
    const double cp = profile_amplitude(p);
    CHECK(std::pow(cp, p - 1.0) ==
          doctest::Approx(2.0 * (p + 1.0) / ((p - 1.0) * (p - 1.0))).epsilon(1e-13));
  }
}

TEST_CASE("boost jacobian and hessian against finite differences") {
  const Vec3 a(0.21, -0.13, 0.08);
  const double h = 1e-5;
  const auto comps = [](const Vec3& v) {
    const BoostCoefficients bc = boost_coefficients(v);
    return Eigen::Vector4d(bc.A0, bc.A[0], bc.A[1], bc.A[2]);
  };
  const Eigen::Matrix<double, 4, 3> jac = boost_jacobian(a);
  for (int j = 0; j < 3; ++j) {
    Vec3 ap = a, am = a;
    ap[j] += h;
    am[j] -= h;
    const Eigen::Vector4d fd = (comps(ap) - comps(am)) / (2.0 * h);
    CHECK((jac.col(j) - fd).cwiseAbs().maxCoeff() < 1e-9);
  }
  const auto hess = boost_hessian(a);
  for (int j = 0; j < 3; ++j) {
    Vec3 ap = a, am = a;
    ap[j] += h;
    am[j] -= h;
    const Eigen::Matrix<double, 4, 3> fd =
        (boost_jacobian(ap) - boost_jacobian(am)) / (2.0 * h);
    for (int mu = 0; mu < 4; ++mu)
      for (int k = 0; k < 3; ++k)
        CHECK(hess[mu](j, k) == doctest::Approx(fd(mu, k)).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("explicit solution time derivative") {
  const BlowupParams par{5.0, 1.2, Vec3(0.1, -0.2, 0.15)};
  const Vec3 x(0.2, 0.1, -0.3);
  const double t = 0.4, h = 1e-6;
  const ValuePair v = blowup_solution_u(par, t, x);
  const double fd =
      (blowup_solution_u(par, t + h, x).u - blowup_solution_u(par, t - h, x).u) / (2.0 * h);
  CHECK(v.ut == doctest::Approx(fd).epsilon(1e-7));
  CHECK_THROWS_AS(blowup_solution_u({5.0, 0.1, Vec3(0.49, 0, 0)}, 0.0999, Vec3(1.0, 0, 0)),
                  std::domain_error);
}

TEST_CASE("unboosted profile is constant") {
  const BallGrid grid = ball_grid(8, 2);
  const double p = 5.0;
  const StatePair psi = profile_psi_a(grid, p, Vec3::Zero());
  const double cp = profile_amplitude(p);
  const double kappa = 2.0 / (p - 1.0) * cp;
  CHECK((psi.f1.array() - cp).abs().maxCoeff() < 1e-14);
  CHECK((psi.f2.array() - kappa).abs().maxCoeff() < 1e-14);
}

TEST_CASE("boost tangents are rapidity derivatives of the profile") {
  const BallGrid grid = ball_grid(8, 4);
  const double p = 5.0, h = 1e-5;
  const Vec3 a(0.1, 0.05, -0.2);
  for (int j = 0; j < 3; ++j) {
    Vec3 ap = a, am = a;
    ap[j] += h;
    am[j] -= h;
    const StatePair fd = (1.0 / (2.0 * h)) * (profile_psi_a(grid, p, ap) - profile_psi_a(grid, p, am));
    const StatePair hj = tangent_h(grid, p, a, j);
    CHECK((hj.f1 - fd.f1).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((hj.f2 - fd.f2).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("pointwise jets match finite differences") {
  const double p = 7.0;
  const Vec3 a(0.15, -0.1, 0.2);
  const BallGrid grid = ball_grid(8, 4);
  const StateJet jet = profile_jet(grid, p, a);
  const double h = 1e-5;
  for (const int probe : {3, 57, 140}) {
    const int k = probe / grid.sphere.count(), s = probe % grid.sphere.count();
    const Vec3 x = grid.node(k, s);
    if (x.norm() > 0.9) continue;
    for (int d = 0; d < 3; ++d) {
      Vec3 xp = x, xm = x;
      xp[d] += h;
      xm[d] -= h;
      const double fd1 = (profile_value(p, a, xp)[0] - profile_value(p, a, xm)[0]) / (2.0 * h);
      const double fd2 = (profile_value(p, a, xp)[1] - profile_value(p, a, xm)[1]) / (2.0 * h);
      CHECK(jet.f1.g(probe, d) == doctest::Approx(fd1).epsilon(1e-7).scale(1.0));
      CHECK(jet.f2.g(probe, d) == doctest::Approx(fd2).epsilon(1e-7).scale(1.0));
    }
  }
}

TEST_CASE("second rapidity derivative jet against finite differences") {
  const BallGrid grid = ball_grid(6, 2);
  const double p = 5.0, h = 1e-4;
  const Vec3 a(0.05, 0.1, -0.15);
  for (int j = 0; j < 3; ++j)
    for (int k = j; k < 3; ++k) {
      Vec3 ap = a, am = a;
      ap[k] += h;
      am[k] -= h;
      const StateJet dd = profile_dd_jet(grid, p, a, j, k);
      const StatePair fd = (1.0 / (2.0 * h)) *
                           (tangent_h(grid, p, ap, j) - tangent_h(grid, p, am, j));
      CHECK((dd.f1.v - fd.f1).cwiseAbs().maxCoeff() < 1e-6);
      CHECK((dd.f2.v - fd.f2).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("static profiles annihilate the nonlinear flow field") {
  // Bandwidth calibration: |a| = 0.15 resolves below 1e-8 at L = 8, |a| = 0.3
  // needs L = 14.
  const double p = 5.0;
  EvolutionConfig cfg;
  cfg.p = p;
  cfg.mode = EvolveMode::nonlinear;
  {
    const BallGrid grid = ball_grid(32, 8);
    const StatePair psi = profile_psi_a(grid, p, Vec3(0.0, 0.0, 0.15));
    CHECK(rel_l2(grid, rhs(grid, psi, cfg), psi) < 1e-8);
  }
  {
    const BallGrid grid = ball_grid(32, 14);
    const StatePair psi = profile_psi_a(grid, p, Vec3(0.0, 0.0, 0.3));
    CHECK(rel_l2(grid, rhs(grid, psi, cfg), psi) < 1e-8);
  }
}

TEST_CASE("prepared data for the unperturbed solution in a shifted frame") {
  const BallGrid grid = ball_grid(8, 2);
  const double p = 5.0, T = 1.1;
  const double q1 = 2.0 / (p - 1.0), q2 = q1 + 1.0;
  const double cp = profile_amplitude(p), kappa = q1 * cp;
  const ScalarField zero = [](const Vec3&) { return 0.0; };
  const StatePair d = prepare_data(grid, zero, zero, T, p);
  CHECK((d.f1.array() - cp * (std::pow(T, q1) - 1.0)).abs().maxCoeff() < 1e-13);
  CHECK((d.f2.array() - kappa * (std::pow(T, q2) - 1.0)).abs().maxCoeff() < 1e-13);
}

TEST_CASE("physical view of the profile reproduces the explicit solution") {
  const BallGrid grid = ball_grid(16, 8);
  const SphereBasis basis = sphere_basis(grid.sphere, 8);
  const double p = 5.0, T = 1.0;
  const Vec3 a(0.0, 0.1, 0.12);
  const StatePair psi = profile_psi_a(grid, p, a);
  const PhysicalSolution phys = from_similarity(grid, psi, 0.0, T, p, 8);
  const BlowupParams par{p, T, a};
  for (const Vec3& x : {Vec3(0.2, 0.1, -0.3), Vec3(0.0, 0.0, 0.0), Vec3(-0.5, 0.4, 0.2)}) {
    const ValuePair got = phys(x);
    const ValuePair exact = blowup_solution_u(par, 0.0, x);
    CHECK(got.u == doctest::Approx(exact.u).epsilon(1e-6));
    CHECK(got.ut == doctest::Approx(exact.ut).epsilon(1e-5));
  }
}

}  // TEST_SUITE
