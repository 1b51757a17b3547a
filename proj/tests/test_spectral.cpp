#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "sswave/sampling.hpp"
#include "sswave/spectral.hpp"

using namespace sswave;

namespace {

// v-space representation of the scaling tangent (ell = 0) and the third
// boost tangent (ell = 1) at a = 0; both have constant v profiles.
Eigen::VectorXcd constant_block_vector(const ModeOperator& op, double v1, double v2) {
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(op.size());
  for (int k = 0; k <= op.N; ++k) {
    x[op.index(0, 0, k)] = v1;
    x[op.index(0, 1, k)] = v2;
  }
  return x;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("scaling tangent is an exact eigenvector at eigenvalue one") {
  const double p = 5.0, q2 = 2.0 / (p - 1.0) + 1.0;
  const ModeOperator op = assemble_mode_operator(p, 0, 20);
  const Eigen::VectorXcd x = constant_block_vector(op, 1.0, q2);
  CHECK((op.mat * x - x).norm() / x.norm() < 1e-10);
}

TEST_CASE("boost tangent is an exact null vector in the ell = 1 block") {
  // The boost tangent has radial profiles (kappa rho, kappa q2 rho); the
  // common kappa scale drops out of the null-vector check.
  const double p = 5.0, q2 = 2.0 / (p - 1.0) + 1.0;
  const ModeOperator op = assemble_mode_operator(p, 1, 20);
  const Eigen::VectorXcd x = constant_block_vector(op, 1.0, q2);
  CHECK((op.mat * x).norm() / x.norm() < 1e-10);
}

TEST_CASE("filtered spectrum contains the analytic eigenvalues") {
  for (const double p : {5.0, 7.0}) {
    for (const int ell : {0, 1}) {
      const auto lc = eigenvalues_of(eigenpairs(assemble_mode_operator(p, ell, 20)));
      const auto lf = eigenvalues_of(eigenpairs(assemble_mode_operator(p, ell, 30)));
      const SpectrumReport rep = filter_spurious(lc, lf, p);
      for (int n = 0; n <= 1; ++n) {
        const double target = 1.0 - ell - 2.0 * n;
        double best = 1e9;
        for (const Complex lam : rep.stable) best = std::min(best, std::abs(lam - target));
        // Entry rounding of the assembled matrix sets the accuracy floor at
        // family collisions (~sqrt(eps * coupling)), so not full precision.
        CHECK(best < 2e-7);
      }
    }
  }
}

TEST_CASE("riesz projections have the symmetry ranks and idempotency") {
  const ModeOperator op0 = assemble_mode_operator(5.0, 0, 16);
  const ProjectionSet ps0 = riesz_projections(op0);
  CHECK(ps0.P.rank() == 1);
  CHECK(ps0.Q.rank() == 0);
  const Eigen::MatrixXcd P = ps0.P.matrix();
  CHECK((P * P - P).norm() / P.norm() < 1e-10);

  const ModeOperator op1 = assemble_mode_operator(5.0, 1, 16);
  const ProjectionSet ps1 = riesz_projections(op1);
  CHECK(ps1.P.rank() == 0);
  CHECK(ps1.Q.rank() == 1);
  CHECK(std::abs(ps1.Q.eigenvalue) < 1e-8);
}

TEST_CASE("contour quadrature reproduces the riesz projector") {
  const ModeOperator op = assemble_mode_operator(5.0, 0, 16);
  const RieszProjection rp = riesz_projection(op, Complex(1.0, 0.0), 0.1);
  REQUIRE(rp.rank() == 1);
  const Eigen::MatrixXcd direct = rp.matrix();
  const Eigen::MatrixXcd contour = contour_projection(op, Complex(1.0, 0.0), 0.1, 24);
  CHECK((direct - contour).norm() / direct.norm() < 1e-8);
}

TEST_CASE("propagator matches the eigenvalue exponential") {
  const double p = 5.0, q2 = 2.0 / (p - 1.0) + 1.0;
  const ModeOperator op = assemble_mode_operator(p, 0, 16);
  const Eigen::VectorXcd x = constant_block_vector(op, 1.0, q2);
  const Eigen::VectorXcd y = propagate(op, x, 1.0);
  CHECK((y - std::exp(1.0) * x).norm() / x.norm() < 1e-9);
}

TEST_CASE("axisymmetric operator at zero boost decouples into mode blocks") {
  const double p = 7.0;
  const ModeOperator full = assemble_axisym_operator(p, 0.0, 16, 3);
  // Off-diagonal blocks vanish when the potential is spherically symmetric.
  double off = 0.0;
  const int bs = full.block_size();
  for (int bi = 0; bi < full.blocks(); ++bi)
    for (int bj = 0; bj < full.blocks(); ++bj) {
      if (bi == bj) continue;
      off = std::max(off, full.mat.block(bi * bs, bj * bs, bs, bs).cwiseAbs().maxCoeff());
    }
  CHECK(off < 1e-14);
  for (int ell = 0; ell <= 3; ++ell) {
    const ModeOperator single = assemble_mode_operator(p, ell, 16);
    CHECK((full.mat.block(ell * bs, ell * bs, bs, bs) - single.mat).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("boosted sector has couplings and a clean gap report") {
  const double p = 7.0;
  const auto lc = eigenvalues_of(eigenpairs(assemble_axisym_operator(p, 0.15, 16, 6)));
  const auto lf = eigenvalues_of(eigenpairs(assemble_axisym_operator(p, 0.15, 24, 6)));
  const SpectrumReport rep = filter_spurious(lc, lf, p);
  double best1 = 1e9, best0 = 1e9;
  for (const Complex lam : rep.stable) {
    best1 = std::min(best1, std::abs(lam - 1.0));
    best0 = std::min(best0, std::abs(lam));
  }
  CHECK(best1 < 1e-6);
  CHECK(best0 < 1e-6);
  CHECK(rep.gap_margin <= 1e-4);
}

TEST_CASE("block to radial multiplies by the origin power") {
  const ModeOperator op = assemble_mode_operator(5.0, 2, 16);
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(op.size());
  for (int k = 0; k <= op.N; ++k) x[op.index(0, 0, k)] = 1.0 + op.z[k];
  const Eigen::VectorXcd u = block_to_radial(op, x, 0, 0);
  for (int k = 0; k <= op.N; ++k) {
    const double rho = op.rho[k];
    CHECK(u[k].real() ==
          doctest::Approx(rho * rho * (1.0 + rho * rho)).epsilon(1e-13).scale(1.0));
  }
}

}  // TEST_SUITE
