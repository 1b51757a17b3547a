#include <doctest.h>

#include <cmath>

#include "sswave/energy.hpp"
#include "sswave/geometry.hpp"
#include "sswave/sampling.hpp"

using namespace sswave;

TEST_SUITE("energy") {

TEST_CASE("closed forms on constant states") {
  const BallGrid grid = ball_grid(12, 4);
  const int n = grid.node_count();
  const StatePair e1(Eigen::VectorXd::Ones(n), Eigen::VectorXd::Zero(n));
  const StatePair e2(Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(n));

  // (e1|e1): only the trace form sees a constant first component, through
  // the boundary average squared (4 pi)^2.
  CHECK(inner(grid, e1, e1, EnergyForm::form1) == doctest::Approx(0.0).scale(1.0));
  CHECK(inner(grid, e1, e1, EnergyForm::form2) == doctest::Approx(0.0).scale(1.0));
  CHECK(inner(grid, e1, e1, EnergyForm::form3) ==
        doctest::Approx(16.0 * M_PI * M_PI).epsilon(1e-12));
  // (e2|e2): boundary u2^2 plus the trace form.
  CHECK(inner(grid, e2, e2, EnergyForm::form1) == doctest::Approx(0.0).scale(1.0));
  CHECK(inner(grid, e2, e2, EnergyForm::form2) == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
  CHECK(inner(grid, e2, e2, EnergyForm::total) ==
        doctest::Approx(4.0 * M_PI + 16.0 * M_PI * M_PI).epsilon(1e-12));

  CHECK(norm_total(grid, e1) == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
  CHECK(norm_equivalence_sample(grid, e1) ==
        doctest::Approx(std::sqrt(12.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("free generator on the constant state") {
  const BallGrid grid = ball_grid(12, 4);
  const int n = grid.node_count();
  const StatePair e1(Eigen::VectorXd::Ones(n), Eigen::VectorXd::Zero(n));
  const double p = 5.0;
  const StatePair lu = apply_Ltilde(grid, e1, p);
  CHECK((lu.f1.array() + 0.5).abs().maxCoeff() < 1e-12);
  // f2 holds the discrete Laplacian of the constant field; its roundoff
  // scales with the D2 entries (~N^4), so allow a little headroom.
  CHECK(lu.f2.cwiseAbs().maxCoeff() < 1e-10);

  // Third dissipativity margin is exactly zero on this state at p = 5.
  const double lhs = inner(grid, lu, e1, EnergyForm::form3);
  const double rate = 2.0 / (p - 1.0);
  CHECK(lhs + rate * inner(grid, e1, e1, EnergyForm::form3) ==
        doctest::Approx(0.0).scale(16.0 * M_PI * M_PI).epsilon(1e-12));
}

TEST_CASE("forms are symmetric bilinear") {
  const BallGrid grid = ball_grid(16, 6);
  Rng rng(5);
  const StatePair u = random_bandlimited_state(grid, rng, 3, 3);
  const StatePair v = random_bandlimited_state(grid, rng, 3, 3);
  for (const EnergyForm f :
       {EnergyForm::form1, EnergyForm::form2, EnergyForm::form3, EnergyForm::total}) {
    const double uv = inner(grid, u, v, f);
    const double vu = inner(grid, v, u, f);
    CHECK(uv == doctest::Approx(vu).epsilon(1e-11).scale(1.0));
  }
  const StatePair w = u + v;
  CHECK(inner(grid, w, w, EnergyForm::total) ==
        doctest::Approx(inner(grid, u, u, EnergyForm::total) +
                        2.0 * inner(grid, u, v, EnergyForm::total) +
                        inner(grid, v, v, EnergyForm::total))
            .epsilon(1e-11));
}

TEST_CASE("dissipativity margins on random bandlimited states") {
  const BallGrid grid = ball_grid(24, 6);
  for (const double p : {4.0, 9.0}) {
    Rng rng(11 + static_cast<int>(p));
    for (int trial = 0; trial < 5; ++trial) {
      const StatePair u = random_bandlimited_state(grid, rng, 3, 3);
      const DissipativityReport rep = dissipativity_report(grid, u, p);
      for (int j = 0; j < 3; ++j) CHECK(rep.rel[j] <= 1e-8);
    }
  }
}

TEST_CASE("norm equivalence stays within fixed bounds on random states") {
  const BallGrid grid = ball_grid(24, 6);
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const StatePair u = random_bandlimited_state(grid, rng, 3, 3);
    const double ratio = norm_equivalence_sample(grid, u);
    CHECK(ratio > 0.05);
    CHECK(ratio < 20.0);
  }
}

}  // TEST_SUITE
