#pragma once

#include <array>
#include <functional>

#include <Eigen/Dense>

#include "sswave/energy.hpp"
#include "sswave/geometry.hpp"
#include "sswave/harmonics.hpp"

// The two-parameter family of explicit blowup solutions (scaling time T,
// Lorentz boost a), its similarity-variable profiles, the tangent states
// generating the symmetry directions, and transforms between physical and
// similarity variables. All derivatives here are closed form: each family
// field is a finite sum of terms coef * B^{-s} * (quadratic polynomial),
// B = A0 - A.xi, which differentiates exactly in both xi and a.

namespace sswave {

// Largest admissible Euclidean norm of the rapidity vector.
inline constexpr double kMaxRapidity = 0.5;

// c_p = [2(p+1)/(p-1)^2]^{1/(p-1)}, the amplitude of the constant-in-space
// blowup profile.
double profile_amplitude(double p);

struct BoostCoefficients {
  double A0;
  Vec3 A;  // (A1, A2, A3)
};

// A0 = cosh a1 cosh a2 cosh a3, A1 = sinh a1 cosh a2 cosh a3,
// A2 = sinh a2 cosh a3, A3 = sinh a3; A0^2 - |A|^2 = 1 identically.
BoostCoefficients boost_coefficients(const Vec3& a);

// jac(mu, j) = d A_mu / d a_j, mu = 0..3.
Eigen::Matrix<double, 4, 3> boost_jacobian(const Vec3& a);

// hess[mu](j, k) = d^2 A_mu / d a_j d a_k.
std::array<Eigen::Matrix3d, 4> boost_hessian(const Vec3& a);

struct BlowupParams {
  double p;
  double T;
  Vec3 a;
};

struct ValuePair {
  double u;
  double ut;
};

// The explicit solution u(t, x) = c_p [A0 (T - t) - A.x]^{-2/(p-1)} and its
// time derivative; throws std::domain_error outside the backward light cone
// of (T, 0) where the bracket is nonpositive.
ValuePair blowup_solution_u(const BlowupParams& par, double t, const Vec3& x);

// Similarity profile Psi_a = (psi_{a,1}, psi_{a,2}) sampled on the grid.
StatePair profile_psi_a(const BallGrid& grid, double p, const Vec3& a);

// Scaling tangent state g_a = (A0 B^{-2/(p-1)-1},
// ((p+1)/(p-1)) A0^2 B^{-2/(p-1)-2}).
StatePair tangent_g(const BallGrid& grid, double p, const Vec3& a);

// Boost tangent states h_{a,j} = d Psi_a / d a_j, j = 0..2.
StatePair tangent_h(const BallGrid& grid, double p, const Vec3& a, int j);

// The same states with exact value/gradient/Hessian jets, as the energy
// forms consume them.
StateJet profile_jet(const BallGrid& grid, double p, const Vec3& a);
StateJet tangent_g_jet(const BallGrid& grid, double p, const Vec3& a);
StateJet tangent_h_jet(const BallGrid& grid, double p, const Vec3& a, int j);

// Second rapidity derivative d^2 Psi_a / d a_j d a_k as a jet (the exact
// Jacobian of the modulation equations needs it).
StateJet profile_dd_jet(const BallGrid& grid, double p, const Vec3& a, int j, int k);

// Pointwise closed-form values (component 1, component 2) at a single point
// of the closed unit ball.
Eigen::Vector2d profile_value(double p, const Vec3& a, const Vec3& x);
Eigen::Vector2d tangent_g_value(double p, const Vec3& a, const Vec3& x);
Eigen::Vector2d tangent_h_value(double p, const Vec3& a, int j, const Vec3& x);

using ScalarField = std::function<double(const Vec3&)>;

// Similarity data at tau = 0 for physical Cauchy data (f, g) on the ball of
// radius T: psi1(xi) = T^{2/(p-1)} f(T xi), psi2(xi) = T^{(p+1)/(p-1)} g(T xi).
StatePair to_similarity(const BallGrid& grid, const ScalarField& f,
                        const ScalarField& g, double T, double p);

// Physical-space view of a similarity snapshot. Valid for |x| < T e^{-tau};
// evaluation interpolates a modal expansion of the snapshot.
class PhysicalSolution {
 public:
  PhysicalSolution(const BallGrid& grid, const ModalPair& modal, double tau,
                   double T, double p);

  double time() const { return t_; }
  double horizon() const { return radius_; }
  ValuePair operator()(const Vec3& x) const;

 private:
  BallGrid grid_;
  ModalPair modal_;
  double t_, radius_, scale1_, scale2_;
};

PhysicalSolution from_similarity(const BallGrid& grid, const StatePair& psi,
                                 double tau, double T, double p, int Lmax);

// Perturbation seen by the similarity flow with trial time T when the
// physical data is the static solution plus (v1, v2):
// returns v^T + Psi_0^T - Psi_0 sampled on the unit ball.
StatePair prepare_data(const BallGrid& grid, const ScalarField& v1,
                       const ScalarField& v2, double T, double p);

}  // namespace sswave
