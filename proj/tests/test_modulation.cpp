#include <doctest.h>

#include <cmath>
#include <vector>

#include "sswave/family.hpp"
#include "sswave/geometry.hpp"
#include "sswave/modulation.hpp"
#include "sswave/sampling.hpp"

using namespace sswave;

TEST_SUITE("modulation") {

TEST_CASE("rapidity fit recovers an exact profile") {
  const BallGrid grid = ball_grid(16, 6);
  const double p = 5.0;
  const Vec3 a(0.05, -0.04, 0.08);
  const StatePair state = profile_psi_a(grid, p, a);
  const RapidityFit fit = fit_rapidity(grid, state, p);
  CHECK(fit.converged);
  CHECK((fit.a_hat - a).norm() < 1e-8);
  // The L = 6 angular band truncates the boosted profile's harmonic tail,
  // which shifts the orthogonality root by ~1e-8; the residual floor follows.
  CHECK(fit.residual_norm < 5e-8);
}

TEST_CASE("rapidity fit tolerates a perturbation") {
  const BallGrid grid = ball_grid(20, 6);
  const double p = 5.0;
  const Vec3 a(0.05, -0.04, 0.08);
  Rng rng(77);
  const StatePair state =
      profile_psi_a(grid, p, a) + 1e-3 * random_bandlimited_state(grid, rng, 2, 2);
  const RapidityFit fit = fit_rapidity(grid, state, p);
  CHECK(fit.converged);
  CHECK((fit.a_hat - a).norm() < 5e-3);
  CHECK(fit.orthogonality.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("blowup time regression on exact center values") {
  const double p = 5.0, T = 1.37;
  const double q1 = 2.0 / (p - 1.0);
  const double cp = profile_amplitude(p);
  std::vector<double> t, u;
  for (int i = 0; i < 12; ++i) {
    t.push_back(0.1 * i);
    u.push_back(cp * std::pow(T - t.back(), -q1));
  }
  const BlowupTimeFit fit = estimate_blowup_time(t, u, p);
  CHECK(fit.monotone);
  CHECK(fit.slope < 0.0);
  CHECK(fit.T_hat == doctest::Approx(T).epsilon(1e-10));
  CHECK_THROWS_AS(estimate_blowup_time({0.0}, {1.0}, p), std::invalid_argument);
}

TEST_CASE("theorem norms vanish exactly on the reference profile") {
  const BallGrid grid = ball_grid(16, 8);
  const double p = 5.0, T = 1.2, t = 0.3;
  const Vec3 a(0.0, 0.1, 0.05);
  const StatePair psi = profile_psi_a(grid, p, a);
  const TheoremNorms norms = theorem_norm_diagnostics(grid, psi, p, T, t, a);
  CHECK(norms.h2h1 < 1e-10);
  CHECK(norms.h1l2 < 1e-10);
  CHECK(norms.l2 < 1e-10);
  CHECK_THROWS_AS(theorem_norm_diagnostics(grid, psi, p, 1.0, 1.5, a), std::invalid_argument);
}

TEST_CASE("theorem norms scale linearly in the deviation") {
  const BallGrid grid = ball_grid(16, 6);
  const double p = 5.0;
  const Vec3 a = Vec3::Zero();
  Rng rng(5);
  const StatePair bump = random_bandlimited_state(grid, rng, 2, 2);
  const StatePair psi1 = profile_psi_a(grid, p, a) + 1e-3 * bump;
  const StatePair psi2 = profile_psi_a(grid, p, a) + 2e-3 * bump;
  const TheoremNorms n1 = theorem_norm_diagnostics(grid, psi1, p, 1.0, 0.0, a);
  const TheoremNorms n2 = theorem_norm_diagnostics(grid, psi2, p, 1.0, 0.0, a);
  CHECK(n2.l2 == doctest::Approx(2.0 * n1.l2).epsilon(1e-10));
  CHECK(n2.h2h1 == doctest::Approx(2.0 * n1.h2h1).epsilon(1e-10));
}

TEST_CASE("rate fit recovers a synthetic exponential") {
  std::vector<double> tau, val;
  for (int i = 0; i < 30; ++i) {
    tau.push_back(0.2 * i);
    val.push_back(3.7 * std::exp(-0.37 * tau.back()));
  }
  const RateFit fit = rate_fit(tau, val);
  CHECK(fit.omega == doctest::Approx(0.37).epsilon(1e-10));
  CHECK(fit.band < 1e-8);
  CHECK(fit.used == 30);
  CHECK(!fit.truncated);
}

TEST_CASE("rate fit needs five usable samples") {
  const RateFit fit = rate_fit({0.0, 1.0, 2.0}, {1.0, 0.5, 0.25});
  CHECK(std::isnan(fit.omega));
}

}  // TEST_SUITE
