#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sswave/geometry.hpp"
#include "sswave/harmonics.hpp"

// Time integration of the similarity-frame flow on the unit ball. States are
// advanced in modal form (spherical-harmonic coefficients times radial
// collocation values); the transport and Laplacian act per degree on radial
// profiles, while the nonlinearity and the boosted potential are applied
// pointwise on the quadrature grid and re-analyzed. The boundary rho = 1 is
// characteristic for this system, so no boundary condition is imposed.

namespace sswave {

enum class EvolveMode { linear_free, linear_a, nonlinear };
enum class StopReason { horizon, overflow, tail_blowup };
enum class DiagnosticsLevel { light, full };

// The explicit step must satisfy dtau <= kCflLimit / (N^2 + L^2) for the
// grid's radial order N and angular band L; integrate() rejects anything
// larger. dtau == 0 selects half that bound.
inline constexpr double kCflLimit = 1.0;

struct EvolutionConfig {
  double p = 5.0;
  EvolveMode mode = EvolveMode::nonlinear;
  Vec3 a = Vec3::Zero();  // potential boost for linear_a

  double dtau = 0.0;    // 0 = automatic
  double tau_max = 10.0;
  bool dealias = false;  // zero degrees above 2L/3 after pointwise products
  int cadence = 0;       // record every this many steps; 0 = about 256 records

  // light records times, sup|psi1|, and per-degree amplitudes; full adds the
  // custom energy norm and the Sobolev-equivalent norm at each record.
  DiagnosticsLevel diagnostics = DiagnosticsLevel::full;
  bool keep_states = false;  // also store modal snapshots at records

  // Axisymmetric fast path: the state is reduced to its m = 0 column and all
  // pointwise work runs on the polar grid. Requires axisymmetric data and,
  // for linear_a, a boost along the third axis.
  bool axisymmetric = false;

  // Stop with reason overflow once sup|psi1| exceeds this (0 disables); used
  // by blowup/collapse classifiers. Independent of the hard 1e8 overflow cap.
  double sup_stop = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<double> sup1;  // sup over grid nodes of |psi1|
  std::vector<double> norm_total;    // full diagnostics only
  std::vector<double> norm_sobolev;  // full diagnostics only

  // One row per record, one column per degree l = 0..L: radially weighted
  // coefficient amplitude of the two components combined.
  Eigen::MatrixXd mode_amplitude;

  std::vector<ModalPair> states;  // filled when keep_states

  StopReason reason = StopReason::horizon;
  double final_time = 0.0;
  int steps_taken = 0;
  double dtau = 0.0;
};

// Right-hand side of the flow for a sampled state, returned as samples.
// Convenience entry point for residual checks; integrate() works in modal
// space throughout.
StatePair rhs(const BallGrid& grid, const StatePair& u, const EvolutionConfig& cfg);

// Classical fourth-order Runge-Kutta up to tau_max or early termination.
Trajectory integrate(const BallGrid& grid, const StatePair& initial,
                     const EvolutionConfig& cfg);

// Least-squares slope of log(norm_total) against time over the second half
// of the records. NaN when fewer than four usable records exist.
double linear_decay_rate(const Trajectory& traj);

}  // namespace sswave
