#include "sswave/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace sswave {

FieldJet field_jet_numeric(const BallGrid& grid, const Eigen::VectorXd& f,
                           bool need_hessian) {
  FieldJet jet;
  jet.v = f;
  jet.g = gradient_on_ball(grid, f);
  if (need_hessian) {
    jet.h.resize(f.size(), 9);
    for (int j = 0; j < 3; ++j) {
      Eigen::MatrixXd hj = gradient_on_ball(grid, jet.g.col(j));
      jet.h.middleCols(3 * j, 3) = hj;
    }
    jet.has_hessian = true;
  }
  return jet;
}

StateJet state_jet_numeric(const BallGrid& grid, const StatePair& u) {
  StateJet jet;
  jet.f1 = field_jet_numeric(grid, u.f1, true);
  jet.f2 = field_jet_numeric(grid, u.f2, false);
  return jet;
}

namespace {

Eigen::VectorXd laplacian_from_hessian(const FieldJet& jet) {
  return jet.h.col(0) + jet.h.col(4) + jet.h.col(8);
}

double boundary_functional(const BallGrid& grid, const StateJet& u) {
  const int S = grid.sphere.count();
  const int N = grid.radial.N;
  double acc = 0.0;
  for (int s = 0; s < S; ++s) {
    const int i = grid.index(N, s);
    const double radial = grid.sphere.omega.row(s).dot(u.f1.g.row(i));
    acc += grid.sphere.weight[s] * (radial + u.f1.v[i] + u.f2.v[i]);
  }
  return acc;
}

double form1(const BallGrid& grid, const StateJet& u, const StateJet& v) {
  const Eigen::Index n = grid.node_count();
  Eigen::VectorXd vol(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    vol[i] = u.f1.h.row(i).dot(v.f1.h.row(i)) + u.f2.g.row(i).dot(v.f2.g.row(i));
  }
  Eigen::VectorXd surf(grid.sphere.count());
  const int N = grid.radial.N;
  for (int s = 0; s < grid.sphere.count(); ++s) {
    const int i = grid.index(N, s);
    surf[s] = u.f1.g.row(i).dot(v.f1.g.row(i));
  }
  return integrate_ball(grid, vol) + grid.sphere.weight.dot(surf);
}

double form2(const BallGrid& grid, const StateJet& u, const StateJet& v) {
  const Eigen::Index n = grid.node_count();
  Eigen::VectorXd lap_u = laplacian_from_hessian(u.f1);
  Eigen::VectorXd lap_v = laplacian_from_hessian(v.f1);
  Eigen::VectorXd vol(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    vol[i] = lap_u[i] * lap_v[i] + u.f2.g.row(i).dot(v.f2.g.row(i));
  }
  Eigen::VectorXd surf(grid.sphere.count());
  const int N = grid.radial.N;
  for (int s = 0; s < grid.sphere.count(); ++s) {
    const int i = grid.index(N, s);
    surf[s] = u.f2.v[i] * v.f2.v[i];
  }
  return integrate_ball(grid, vol) + grid.sphere.weight.dot(surf);
}

double form3(const BallGrid& grid, const StateJet& u, const StateJet& v) {
  return boundary_functional(grid, u) * boundary_functional(grid, v);
}

}  // namespace

double inner(const BallGrid& grid, const StateJet& u, const StateJet& v, EnergyForm form) {
  if (!u.f1.has_hessian || !v.f1.has_hessian) {
    throw std::invalid_argument("inner: jets must carry first-component Hessians");
  }
  switch (form) {
    case EnergyForm::form1:
      return form1(grid, u, v);
    case EnergyForm::form2:
      return form2(grid, u, v);
    case EnergyForm::form3:
      return form3(grid, u, v);
    case EnergyForm::total:
      return form1(grid, u, v) + form2(grid, u, v) + form3(grid, u, v);
  }
  throw std::logic_error("inner: unknown form");
}

double inner(const BallGrid& grid, const StatePair& u, const StatePair& v, EnergyForm form) {
  const StateJet ju = state_jet_numeric(grid, u);
  const StateJet jv = state_jet_numeric(grid, v);
  return inner(grid, ju, jv, form);
}

double norm_total(const BallGrid& grid, const StateJet& u) {
  return std::sqrt(std::max(0.0, inner(grid, u, u, EnergyForm::total)));
}

double norm_total(const BallGrid& grid, const StatePair& u) {
  const StateJet ju = state_jet_numeric(grid, u);
  return norm_total(grid, ju);
}

double norm_sobolev(const BallGrid& grid, const StateJet& u) {
  const Eigen::Index n = grid.node_count();
  Eigen::VectorXd vol(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    vol[i] = u.f1.v[i] * u.f1.v[i] + u.f1.g.row(i).squaredNorm() +
             u.f1.h.row(i).squaredNorm() + u.f2.v[i] * u.f2.v[i] +
             u.f2.g.row(i).squaredNorm();
  }
  return std::sqrt(std::max(0.0, integrate_ball(grid, vol)));
}

double norm_sobolev(const BallGrid& grid, const StatePair& u) {
  const StateJet ju = state_jet_numeric(grid, u);
  return norm_sobolev(grid, ju);
}

StatePair apply_Ltilde(const BallGrid& grid, const StatePair& u, double p) {
  if (p <= 1.0) throw std::invalid_argument("apply_Ltilde: requires p > 1");
  const double q1 = 2.0 / (p - 1.0);
  const double q2 = (p + 1.0) / (p - 1.0);
  const int S = grid.sphere.count();
  const int nr = grid.radial.N + 1;

  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMat> F1(u.f1.data(), nr, S);
  Eigen::Map<const RowMat> F2(u.f2.data(), nr, S);
  RowMat dF1 = grid.radial.D1 * F1;
  RowMat dF2 = grid.radial.D1 * F2;

  FieldJet j1 = field_jet_numeric(grid, u.f1, true);
  Eigen::VectorXd lap1 = laplacian_from_hessian(j1);

  StatePair out = StatePair::zero(grid);
  for (int k = 0; k < nr; ++k) {
    const double rho = grid.radial.rho[k];
    for (int s = 0; s < S; ++s) {
      const int i = grid.index(k, s);
      out.f1[i] = -rho * dF1(k, s) - q1 * u.f1[i] + u.f2[i];
      out.f2[i] = lap1[i] - rho * dF2(k, s) - q2 * u.f2[i];
    }
  }
  return out;
}

DissipativityReport dissipativity_report(const BallGrid& grid, const StatePair& u, double p) {
  const StateJet ju = state_jet_numeric(grid, u);
  const StatePair lu = apply_Ltilde(grid, u, p);
  const StateJet jlu = state_jet_numeric(grid, lu);

  const double q1 = 2.0 / (p - 1.0);
  const double rate[3] = {q1 + 0.5, q1 + 0.5, q1};
  const EnergyForm forms[3] = {EnergyForm::form1, EnergyForm::form2, EnergyForm::form3};

  DissipativityReport rep{};
  double total_uu = 0.0;
  for (int j = 0; j < 3; ++j) {
    rep.form_uu[j] = inner(grid, ju, ju, forms[j]);
    total_uu += rep.form_uu[j];
  }
  for (int j = 0; j < 3; ++j) {
    const double cross = inner(grid, jlu, ju, forms[j]);
    rep.margin[j] = cross + rate[j] * rep.form_uu[j];
    const double denom = std::max(rep.form_uu[j], 1e-14 * std::max(total_uu, 1.0));
    rep.rel[j] = rep.margin[j] / denom;
  }
  return rep;
}

double norm_equivalence_sample(const BallGrid& grid, const StatePair& u) {
  const StateJet ju = state_jet_numeric(grid, u);
  const double sob = norm_sobolev(grid, ju);
  if (sob == 0.0) throw std::invalid_argument("norm_equivalence_sample: zero state");
  return norm_total(grid, ju) / sob;
}

}  // namespace sswave
