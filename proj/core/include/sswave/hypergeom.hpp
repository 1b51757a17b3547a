#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

// Gauss hypergeometric machinery: 2F1 on [0,1) with the 1-z connection
// formula and its logarithmic degenerations, the closed-form solutions and
// Wronskian of the radial mode equations, the analytic point spectrum of the
// linearized operator, and the variation-of-constants solver for the
// degenerate elliptic boundary problem.

namespace sswave {

using Complex = std::complex<double>;

// Principal-branch log Gamma by a Lanczos approximation, accurate to about
// 1e-13 on the parameter strip used here; throws at the poles.
Complex log_gamma(Complex z);

// 1/Gamma(z); returns exactly 0 at nonpositive integers (pole detection).
Complex reciprocal_gamma(Complex z);

Complex digamma(Complex z);

// Hypergeometric parameters; the conventional (a, b, c) renamed so they
// cannot be confused with the rapidity a.
struct HypergeomParams {
  Complex alpha, beta, gamma;
};

// 2F1(alpha, beta; gamma; z) for z in [0,1). Direct series for z <= 1/2,
// two-term 1-z connection for z > 1/2; when gamma-alpha-beta is within 1e-6
// of an integer the logarithmic limit formulas take over. Terminating cases
// (alpha or beta a nonpositive integer) are summed exactly first.
Complex gauss_2f1(const HypergeomParams& par, double z);

// Reference path: plain power series regardless of z (converges on [0,1),
// slowly near 1). Exposed for connection-consistency checks.
Complex gauss_2f1_series(const HypergeomParams& par, double z, int max_terms = 20000);

// d/dz 2F1 = (alpha beta / gamma) 2F1(alpha+1, beta+1; gamma+1; z).
Complex gauss_2f1_derivative(const HypergeomParams& par, double z);

// Radial mode equation data: spherical-harmonic degree ell, spectral
// parameter lambda, nonlinearity power p.
struct ModeODE {
  int ell;
  Complex lambda;
  double p;
};

// In z = rho^2 with u = rho^ell v(z), the mode eigen-equation becomes the
// hypergeometric equation with these parameters.
HypergeomParams eigen_params(const ModeODE& mode);

// Parameters of the potential-free problem at lambda = 3/2 - 2/(p-1), which
// is p-independent: (3+2l)/4, (5+2l)/4, (3+2l)/2.
HypergeomParams resolvent_params(int ell);

// The two distinguished solutions of the hypergeometric form of a mode ODE,
// as functions of z in (0,1): phi0 analytic at z=0, phi1 analytic at z=1,
// with z-derivatives. The radial solutions are u_j(rho) = rho^ell phi_j(rho^2).
struct SolutionPair {
  std::function<Complex(double)> phi0, dphi0;
  std::function<Complex(double)> phi1, dphi1;
};

SolutionPair eigensolution_pair(const ModeODE& mode);
SolutionPair resolvent_solution_pair(int ell);

// All real eigenvalues lambda = 1 - ell - 2n and
// lambda = -2(p+1)/(p-1) - ell - 2n with Re >= half_plane_bound,
// deduplicated, sorted descending.
std::vector<double> analytic_point_spectrum(int ell, double p, double half_plane_bound);

// Closed form W(psi0, psi1)(rho) = -2^{1/2+ell} / (rho^2 (1-rho^2)^{3/2})
// for the potential-free pair above.
double resolvent_wronskian(int ell, double rho);

// Solves [-(1-rho^2) d_rho^2 - (2/rho) d_rho + 5 rho d_rho
//         + ell(ell+1)/rho^2 + 15/4] u = g on (0,1), bounded at both ends,
// by variation of constants with adaptive Gauss panels and the s = 1-sigma^2
// endpoint substitution. Returns u at the requested radii (in [0,1]).
Eigen::VectorXd resolvent_mode_solve(int ell, const std::function<double(double)>& g,
                                     const Eigen::VectorXd& rho_out);

}  // namespace sswave
