#pragma once

#include <Eigen/Dense>

#include "sswave/geometry.hpp"
#include "sswave/harmonics.hpp"

// The custom energy structure: three bilinear forms on two-component states,
// their sum (the total inner product), the formal generator of the free
// similarity flow, and the dissipativity / norm-equivalence diagnostics.

namespace sswave {

enum class EnergyForm { form1, form2, form3, total };

// Pointwise derivative data for one scalar field on the ball grid.
// g(i, j) = d_j f at node i; h(i, 3*j + k) = d_k d_j f (needed only for the
// first state component).
struct FieldJet {
  Eigen::VectorXd v;
  Eigen::MatrixXd g;
  Eigen::MatrixXd h;
  bool has_hessian = false;
};

struct StateJet {
  FieldJet f1, f2;
};

inline FieldJet operator-(const FieldJet& a, const FieldJet& b) {
  FieldJet out;
  out.v = a.v - b.v;
  out.g = a.g - b.g;
  out.has_hessian = a.has_hessian && b.has_hessian;
  if (out.has_hessian) out.h = a.h - b.h;
  return out;
}

inline StateJet operator-(const StateJet& a, const StateJet& b) {
  return {a.f1 - b.f1, a.f2 - b.f2};
}

// Numeric jets by repeated spectral differentiation; exact on bandlimited
// fields up to quadrature roundoff.
FieldJet field_jet_numeric(const BallGrid& grid, const Eigen::VectorXd& f,
                           bool need_hessian);
StateJet state_jet_numeric(const BallGrid& grid, const StatePair& u);

// Quadrature evaluation of the forms. Both jets must carry Hessians of the
// first component (form1/form2 use them).
double inner(const BallGrid& grid, const StateJet& u, const StateJet& v, EnergyForm form);

// Convenience overload computing jets on the fly.
double inner(const BallGrid& grid, const StatePair& u, const StatePair& v, EnergyForm form);

double norm_total(const BallGrid& grid, const StateJet& u);
double norm_total(const BallGrid& grid, const StatePair& u);

// Full H2 x H1 Sobolev norm (all derivatives through order 2 of the first
// component, through order 1 of the second).
double norm_sobolev(const BallGrid& grid, const StateJet& u);
double norm_sobolev(const BallGrid& grid, const StatePair& u);

// The formal free generator:
//   component 1: -xi.grad u1 - (2/(p-1)) u1 + u2
//   component 2: Delta u1 - xi.grad u2 - ((p+1)/(p-1)) u2
StatePair apply_Ltilde(const BallGrid& grid, const StatePair& u, double p);

// Margins of the three dissipativity inequalities,
//   margin_j = (Lt u | u)_j + rate_j (u|u)_j,
// rate_{1,2} = 2/(p-1) + 1/2, rate_3 = 2/(p-1); all must be <= quadrature
// tolerance for smooth states. rel[j] normalizes by (u|u)_j (falls back to
// the total when a form vanishes).
struct DissipativityReport {
  double margin[3];
  double rel[3];
  double form_uu[3];
};
DissipativityReport dissipativity_report(const BallGrid& grid, const StatePair& u, double p);

// ||u||_total / ||u||_{H2 x H1}; throws for the zero state.
double norm_equivalence_sample(const BallGrid& grid, const StatePair& u);

}  // namespace sswave
