#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sswave/evolve.hpp"
#include "sswave/family.hpp"
#include "sswave/geometry.hpp"
#include "sswave/harmonics.hpp"

// Modulation analysis: extracting the best-matching boosted profile from a
// state, blowup-time recovery from center values, the weighted norms of the
// stability statement, decay-rate fits, and the end-to-end stability run
// (bisection over the frame time plus a diagnosed trajectory).

namespace sswave {

// Solves the orthogonality conditions (state - profile(a) | h_{a,j}) = 0,
// j = 1..3, in the total inner product by Newton iteration with the exact
// Jacobian (analytic profile derivatives; the state is differentiated
// numerically once). Intended for states within about 10% of the profile
// manifold; convergence failure is reported, not thrown.
struct RapidityFit {
  Vec3 a_hat = Vec3::Zero();
  double residual_norm = 0.0;       // total norm of state - profile(a_hat)
  Eigen::Vector3d orthogonality = Eigen::Vector3d::Zero();  // final residuals
  int iterations = 0;
  bool converged = false;
};

RapidityFit fit_rapidity(const BallGrid& grid, const StatePair& state, double p,
                         const Vec3& guess = Vec3::Zero());

// Linear regression of u(t,0)^{-(p-1)/2} against t; for a solution blowing
// up at T the regressed line crosses zero at T. monotone reports whether the
// center series was strictly increasing and positive.
struct BlowupTimeFit {
  double T_hat = 0.0;
  double slope = 0.0;
  bool monotone = true;
};

BlowupTimeFit estimate_blowup_time(const std::vector<double>& t,
                                   const std::vector<double>& u_center, double p);

// The three weighted distances of the stability statement, measured at
// physical time t for frame time T against the profile with rapidity a_ref.
// In similarity variables every power of (T - t) cancels, so each value is a
// fixed-ball seminorm of the profile deviation:
//   h2h1: sqrt( int |D^2 d1|^2 + |grad d2|^2 )
//   h1l2: sqrt( int |grad d1|^2 + d2^2 )
//   l2:   sqrt( int d1^2 )
// with (d1, d2) = psi - profile(a_ref). Requires 0 <= t < T.
struct TheoremNorms {
  double h2h1 = 0.0;
  double h1l2 = 0.0;
  double l2 = 0.0;
};

TheoremNorms theorem_norm_diagnostics(const BallGrid& grid, const StatePair& psi,
                                      double p, double T, double t, const Vec3& a_ref);

// Least-squares exponential fit values ~ C exp(-omega tau). Samples below
// 1e-13 times the series maximum are dropped (truncated set when any were);
// band is twice the standard error of the slope. Requires at least five
// usable samples, otherwise omega is NaN.
struct RateFit {
  double omega = 0.0;
  double band = 0.0;
  bool truncated = false;
  int used = 0;
};

RateFit rate_fit(const std::vector<double>& tau, const std::vector<double>& values);

// Per-snapshot rapidity fits along a recorded trajectory (requires
// keep_states). Fits are warm-started from the previous snapshot; a_inf is
// the last converged fit and residual_rate the decay fit of the residual
// norms for tau >= window_start.
struct ModulationFit {
  std::vector<double> tau;
  std::vector<Vec3> a_hat;
  std::vector<double> residual_norm;
  std::vector<double> orthogonality_max;
  Vec3 a_inf = Vec3::Zero();
  RateFit residual_rate;
  bool all_converged = true;
};

ModulationFit fit_trajectory(const BallGrid& grid, const Trajectory& traj, double p,
                             double window_start = 2.0);

// Full nonlinear stability experiment. Physical data are the exact blowup
// solution with unit blowup time plus delta times the given perturbation;
// the frame time T is bisected between collapse (T too small) and finite-tau
// blowup (T too large) using cheap classification runs, then the critical
// frame time gets one fully diagnosed trajectory with modulation fits,
// theorem-norm decay rates, and the center-value blowup-time regression.
struct StabilityConfig {
  double p = 5.0;
  double delta = 1e-3;
  ScalarField v1, v2;  // perturbation shape, scaled by delta (empty = zero)

  int N = 24;
  int L = 8;
  double tau_max = 15.0;        // diagnosed run horizon
  double tau_classify = 45.0;   // classification horizon
  double T_low = 0.7, T_high = 1.4;
  int max_bisect = 80;
  double dtau = 0.0;
  bool dealias = false;
};

struct StabilityResult {
  double T_star = 0.0;        // critical frame time from bisection
  int bisection_runs = 0;
  bool classified = false;    // initial bracket validated
  Trajectory trajectory;      // diagnosed run at T_star
  ModulationFit fit;
  TheoremNorms final_norms;   // at the last record
  RateFit norm_rate_h2h1, norm_rate_h1l2, norm_rate_l2;
  BlowupTimeFit time_fit;     // center-value regression, physical time
};

StabilityResult stability_run(const StabilityConfig& cfg);

}  // namespace sswave
