#include "sswave/family.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sswave {

namespace {

void require_p(double p) {
  if (p <= 1.0) throw std::invalid_argument("family: requires p > 1");
}

void require_rapidity(const Vec3& a) {
  if (!(a.norm() <= kMaxRapidity)) {
    throw std::domain_error("family: rapidity norm exceeds the cap 0.5");
  }
}

// Factor kinds of A_mu = prod_i f(kind[mu][i], a_i).
enum Kind { kOne = 0, kCosh = 1, kSinh = 2 };

constexpr int kKinds[4][3] = {
    {kCosh, kCosh, kCosh},
    {kSinh, kCosh, kCosh},
    {kOne, kSinh, kCosh},
    {kOne, kOne, kSinh},
};

double factor(int kind, double t) {
  switch (kind) {
    case kOne:
      return 1.0;
    case kCosh:
      return std::cosh(t);
    default:
      return std::sinh(t);
  }
}

double factor_d1(int kind, double t) {
  switch (kind) {
    case kOne:
      return 0.0;
    case kCosh:
      return std::sinh(t);
    default:
      return std::cosh(t);
  }
}

double factor_d2(int kind, double t) { return kind == kOne ? 0.0 : factor(kind, t); }

// One closed-form building block: coef * B^{-s} * (alpha + beta.x + x.gamma.x).
struct Term {
  double coef;
  double s;
  double alpha;
  Vec3 beta;
  Eigen::Matrix3d gamma;
};

Term constant_term(double coef, double s) {
  return Term{coef, s, 1.0, Vec3::Zero(), Eigen::Matrix3d::Zero()};
}

Term affine_term(double coef, double s, double alpha, const Vec3& beta) {
  return Term{coef, s, alpha, beta, Eigen::Matrix3d::Zero()};
}

// coef * B^{-s} * (a1 + b1.x)(a2 + b2.x)
Term product_term(double coef, double s, double a1, const Vec3& b1, double a2,
                  const Vec3& b2) {
  Term t;
  t.coef = coef;
  t.s = s;
  t.alpha = a1 * a2;
  t.beta = a1 * b2 + a2 * b1;
  t.gamma = 0.5 * (b1 * b2.transpose() + b2 * b1.transpose());
  return t;
}

struct TermPair {
  std::vector<Term> c1, c2;
};

struct Exponents {
  double q1, q2, cp, kappa;
};

Exponents exponents(double p) {
  require_p(p);
  Exponents e;
  e.q1 = 2.0 / (p - 1.0);
  e.q2 = e.q1 + 1.0;
  e.cp = profile_amplitude(p);
  e.kappa = e.q1 * e.cp;
  return e;
}

TermPair terms_profile(double p, const BoostCoefficients& bc) {
  const Exponents e = exponents(p);
  TermPair t;
  t.c1.push_back(constant_term(e.cp, e.q1));
  t.c2.push_back(constant_term(e.kappa * bc.A0, e.q2));
  return t;
}

TermPair terms_tangent_g(double p, const BoostCoefficients& bc) {
  const Exponents e = exponents(p);
  TermPair t;
  t.c1.push_back(constant_term(bc.A0, e.q1 + 1.0));
  t.c2.push_back(constant_term(e.q2 * bc.A0 * bc.A0, e.q1 + 2.0));
  return t;
}

// The affine field dB/da_j = J(0,j) - sum_i J(i,j) x_i.
void boost_direction(const Eigen::Matrix<double, 4, 3>& jac, int j, double* alpha,
                     Vec3* beta) {
  *alpha = jac(0, j);
  *beta = -jac.block<3, 1>(1, j);
}

TermPair terms_tangent_h(double p, const Vec3& a, const BoostCoefficients& bc, int j) {
  const Exponents e = exponents(p);
  const Eigen::Matrix<double, 4, 3> jac = boost_jacobian(a);
  double da;
  Vec3 db;
  boost_direction(jac, j, &da, &db);
  TermPair t;
  t.c1.push_back(affine_term(-e.cp * e.q1, e.q1 + 1.0, da, db));
  t.c2.push_back(constant_term(e.kappa * jac(0, j), e.q2));
  t.c2.push_back(affine_term(-e.kappa * e.q2 * bc.A0, e.q2 + 1.0, da, db));
  return t;
}

TermPair terms_profile_dd(double p, const Vec3& a, const BoostCoefficients& bc, int j,
                          int k) {
  const Exponents e = exponents(p);
  const Eigen::Matrix<double, 4, 3> jac = boost_jacobian(a);
  const std::array<Eigen::Matrix3d, 4> hess = boost_hessian(a);
  double daj, dak;
  Vec3 dbj, dbk;
  boost_direction(jac, j, &daj, &dbj);
  boost_direction(jac, k, &dak, &dbk);
  const double hajk = hess[0](j, k);
  const Vec3 hbjk = -(Vec3() << hess[1](j, k), hess[2](j, k), hess[3](j, k)).finished();

  TermPair t;
  t.c1.push_back(product_term(e.cp * e.q1 * (e.q1 + 1.0), e.q1 + 2.0, daj, dbj, dak, dbk));
  t.c1.push_back(affine_term(-e.cp * e.q1, e.q1 + 1.0, hajk, hbjk));

  t.c2.push_back(constant_term(e.kappa * hajk, e.q2));
  t.c2.push_back(affine_term(-e.kappa * e.q2 * jac(0, j), e.q2 + 1.0, dak, dbk));
  t.c2.push_back(affine_term(-e.kappa * e.q2 * jac(0, k), e.q2 + 1.0, daj, dbj));
  t.c2.push_back(
      product_term(e.kappa * e.q2 * (e.q2 + 1.0) * bc.A0, e.q2 + 2.0, daj, dbj, dak, dbk));
  t.c2.push_back(affine_term(-e.kappa * e.q2 * bc.A0, e.q2 + 1.0, hajk, hbjk));
  return t;
}

double eval_terms(const std::vector<Term>& terms, const BoostCoefficients& bc,
                  const Vec3& x) {
  const double B = bc.A0 - bc.A.dot(x);
  double acc = 0.0;
  for (const Term& t : terms) {
    const double lin = t.alpha + t.beta.dot(x) + x.dot(t.gamma * x);
    acc += t.coef * std::pow(B, -t.s) * lin;
  }
  return acc;
}

void eval_terms_jet(const std::vector<Term>& terms, const BoostCoefficients& bc,
                    const Vec3& x, bool need_hessian, double* val, Vec3* grad,
                    Eigen::Matrix3d* hess) {
  const double B = bc.A0 - bc.A.dot(x);
  *val = 0.0;
  grad->setZero();
  if (need_hessian) hess->setZero();
  for (const Term& t : terms) {
    const double P = t.coef * std::pow(B, -t.s);
    const double lin = t.alpha + t.beta.dot(x) + x.dot(t.gamma * x);
    const Vec3 dlin = t.beta + 2.0 * (t.gamma * x);
    *val += P * lin;
    *grad += P * ((t.s / B) * lin * bc.A + dlin);
    if (need_hessian) {
      *hess += P * ((t.s * (t.s + 1.0) / (B * B)) * lin * (bc.A * bc.A.transpose()) +
                    (t.s / B) * (bc.A * dlin.transpose() + dlin * bc.A.transpose()) +
                    2.0 * t.gamma);
    }
  }
}

StatePair sample_terms(const BallGrid& grid, const BoostCoefficients& bc,
                       const TermPair& terms) {
  StatePair out = StatePair::zero(grid);
  for (int k = 0; k <= grid.radial.N; ++k) {
    for (int s = 0; s < grid.sphere.count(); ++s) {
      const Vec3 x = grid.node(k, s);
      const Eigen::Index i = grid.index(k, s);
      out.f1[i] = eval_terms(terms.c1, bc, x);
      out.f2[i] = eval_terms(terms.c2, bc, x);
    }
  }
  return out;
}

StateJet sample_terms_jet(const BallGrid& grid, const BoostCoefficients& bc,
                          const TermPair& terms) {
  StateJet jet;
  const Eigen::Index n = grid.node_count();
  jet.f1.v.resize(n);
  jet.f1.g.resize(n, 3);
  jet.f1.h.resize(n, 9);
  jet.f1.has_hessian = true;
  jet.f2.v.resize(n);
  jet.f2.g.resize(n, 3);
  for (int k = 0; k <= grid.radial.N; ++k) {
    for (int s = 0; s < grid.sphere.count(); ++s) {
      const Vec3 x = grid.node(k, s);
      const Eigen::Index i = grid.index(k, s);
      double val;
      Vec3 grad;
      Eigen::Matrix3d hess;
      eval_terms_jet(terms.c1, bc, x, true, &val, &grad, &hess);
      jet.f1.v[i] = val;
      jet.f1.g.row(i) = grad.transpose();
      for (int r = 0; r < 3; ++r) jet.f1.h.block<1, 3>(i, 3 * r) = hess.row(r);
      eval_terms_jet(terms.c2, bc, x, false, &val, &grad, nullptr);
      jet.f2.v[i] = val;
      jet.f2.g.row(i) = grad.transpose();
    }
  }
  return jet;
}

void check_axis(int j) {
  if (j < 0 || j > 2) throw std::invalid_argument("family: axis index must be 0, 1, 2");
}

}  // namespace

double profile_amplitude(double p) {
  require_p(p);
  const double base = 2.0 * (p + 1.0) / ((p - 1.0) * (p - 1.0));
  return std::exp(std::log(base) / (p - 1.0));
}

BoostCoefficients boost_coefficients(const Vec3& a) {
  BoostCoefficients bc;
  bc.A0 = factor(kKinds[0][0], a[0]) * factor(kKinds[0][1], a[1]) * factor(kKinds[0][2], a[2]);
  for (int mu = 1; mu < 4; ++mu) {
    bc.A[mu - 1] = factor(kKinds[mu][0], a[0]) * factor(kKinds[mu][1], a[1]) *
                   factor(kKinds[mu][2], a[2]);
  }
  return bc;
}

Eigen::Matrix<double, 4, 3> boost_jacobian(const Vec3& a) {
  Eigen::Matrix<double, 4, 3> jac;
  for (int mu = 0; mu < 4; ++mu) {
    for (int j = 0; j < 3; ++j) {
      double v = factor_d1(kKinds[mu][j], a[j]);
      if (v != 0.0) {
        for (int i = 0; i < 3; ++i) {
          if (i != j) v *= factor(kKinds[mu][i], a[i]);
        }
      }
      jac(mu, j) = v;
    }
  }
  return jac;
}

std::array<Eigen::Matrix3d, 4> boost_hessian(const Vec3& a) {
  std::array<Eigen::Matrix3d, 4> hess;
  for (int mu = 0; mu < 4; ++mu) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        double v;
        if (j == k) {
          v = factor_d2(kKinds[mu][j], a[j]);
        } else {
          v = factor_d1(kKinds[mu][j], a[j]) * factor_d1(kKinds[mu][k], a[k]);
        }
        if (v != 0.0) {
          for (int i = 0; i < 3; ++i) {
            if (i != j && i != k) v *= factor(kKinds[mu][i], a[i]);
          }
        }
        hess[mu](j, k) = v;
      }
    }
  }
  return hess;
}

ValuePair blowup_solution_u(const BlowupParams& par, double t, const Vec3& x) {
  const Exponents e = exponents(par.p);
  require_rapidity(par.a);
  const BoostCoefficients bc = boost_coefficients(par.a);
  const double bracket = bc.A0 * (par.T - t) - bc.A.dot(x);
  if (!(bracket > 0.0)) {
    throw std::domain_error("blowup_solution_u: point outside the backward light cone");
  }
  ValuePair v;
  v.u = e.cp * std::pow(bracket, -e.q1);
  v.ut = e.q1 * e.cp * bc.A0 * std::pow(bracket, -e.q1 - 1.0);
  return v;
}

StatePair profile_psi_a(const BallGrid& grid, double p, const Vec3& a) {
  require_rapidity(a);
  const BoostCoefficients bc = boost_coefficients(a);
  return sample_terms(grid, bc, terms_profile(p, bc));
}

StatePair tangent_g(const BallGrid& grid, double p, const Vec3& a) {
  require_rapidity(a);
  const BoostCoefficients bc = boost_coefficients(a);
  return sample_terms(grid, bc, terms_tangent_g(p, bc));
}

StatePair tangent_h(const BallGrid& grid, double p, const Vec3& a, int j) {
  require_rapidity(a);
  check_axis(j);
  const BoostCoefficients bc = boost_coefficients(a);
  return sample_terms(grid, bc, terms_tangent_h(p, a, bc, j));
}

StateJet profile_jet(const BallGrid& grid, double p, const Vec3& a) {
  require_rapidity(a);
  const BoostCoefficients bc = boost_coefficients(a);
  return sample_terms_jet(grid, bc, terms_profile(p, bc));
}

StateJet tangent_g_jet(const BallGrid& grid, double p, const Vec3& a) {
  require_rapidity(a);
  const BoostCoefficients bc = boost_coefficients(a);
  return sample_terms_jet(grid, bc, terms_tangent_g(p, bc));
}

StateJet tangent_h_jet(const BallGrid& grid, double p, const Vec3& a, int j) {
  require_rapidity(a);
  check_axis(j);
  const BoostCoefficients bc = boost_coefficients(a);
  return sample_terms_jet(grid, bc, terms_tangent_h(p, a, bc, j));
}

namespace {

Eigen::Vector2d value_of(const BoostCoefficients& bc, const TermPair& terms, const Vec3& x) {
  return Eigen::Vector2d(eval_terms(terms.c1, bc, x), eval_terms(terms.c2, bc, x));
}

}  // namespace

Eigen::Vector2d profile_value(double p, const Vec3& a, const Vec3& x) {
  require_rapidity(a);
  const BoostCoefficients bc = boost_coefficients(a);
  return value_of(bc, terms_profile(p, bc), x);
}

Eigen::Vector2d tangent_g_value(double p, const Vec3& a, const Vec3& x) {
  require_rapidity(a);
  const BoostCoefficients bc = boost_coefficients(a);
  return value_of(bc, terms_tangent_g(p, bc), x);
}

Eigen::Vector2d tangent_h_value(double p, const Vec3& a, int j, const Vec3& x) {
  require_rapidity(a);
  check_axis(j);
  const BoostCoefficients bc = boost_coefficients(a);
  return value_of(bc, terms_tangent_h(p, a, bc, j), x);
}

StateJet profile_dd_jet(const BallGrid& grid, double p, const Vec3& a, int j, int k) {
  require_rapidity(a);
  check_axis(j);
  check_axis(k);
  const BoostCoefficients bc = boost_coefficients(a);
  return sample_terms_jet(grid, bc, terms_profile_dd(p, a, bc, j, k));
}

StatePair to_similarity(const BallGrid& grid, const ScalarField& f, const ScalarField& g,
                        double T, double p) {
  const Exponents e = exponents(p);
  if (!(T > 0.0)) throw std::invalid_argument("to_similarity: requires T > 0");
  const double s1 = std::pow(T, e.q1);
  const double s2 = std::pow(T, e.q2);
  StatePair out = StatePair::zero(grid);
  for (int k = 0; k <= grid.radial.N; ++k) {
    for (int s = 0; s < grid.sphere.count(); ++s) {
      const Vec3 y = T * grid.node(k, s);
      const Eigen::Index i = grid.index(k, s);
      out.f1[i] = s1 * f(y);
      out.f2[i] = s2 * g(y);
    }
  }
  return out;
}

PhysicalSolution::PhysicalSolution(const BallGrid& grid, const ModalPair& modal,
                                   double tau, double T, double p)
    : grid_(grid), modal_(modal) {
  const Exponents e = exponents(p);
  if (!(T > 0.0)) throw std::invalid_argument("from_similarity: requires T > 0");
  radius_ = T * std::exp(-tau);
  t_ = T - radius_;
  scale1_ = std::pow(radius_, -e.q1);
  scale2_ = std::pow(radius_, -e.q2);
}

ValuePair PhysicalSolution::operator()(const Vec3& x) const {
  const double r = x.norm();
  if (r > radius_ * (1.0 + 1e-12)) {
    throw std::domain_error("PhysicalSolution: point outside the similarity cylinder");
  }
  const Vec3 xi = x / radius_;
  ValuePair v;
  v.u = scale1_ * evaluate_modal(grid_, modal_.c1, xi);
  v.ut = scale2_ * evaluate_modal(grid_, modal_.c2, xi);
  return v;
}

PhysicalSolution from_similarity(const BallGrid& grid, const StatePair& psi, double tau,
                                 double T, double p, int Lmax) {
  const SphereBasis basis = sphere_basis(grid.sphere, Lmax);
  const ModalPair modal = analyze_pair(grid, basis, psi, Lmax);
  return PhysicalSolution(grid, modal, tau, T, p);
}

StatePair prepare_data(const BallGrid& grid, const ScalarField& v1, const ScalarField& v2,
                       double T, double p) {
  const Exponents e = exponents(p);
  if (!(T > 0.0)) throw std::invalid_argument("prepare_data: requires T > 0");
  const double s1 = std::pow(T, e.q1);
  const double s2 = std::pow(T, e.q2);
  StatePair out = StatePair::zero(grid);
  for (int k = 0; k <= grid.radial.N; ++k) {
    for (int s = 0; s < grid.sphere.count(); ++s) {
      const Vec3 y = T * grid.node(k, s);
      const Eigen::Index i = grid.index(k, s);
      out.f1[i] = s1 * (v1(y) + e.cp) - e.cp;
      out.f2[i] = s2 * (v2(y) + e.q1 * e.cp) - e.q1 * e.cp;
    }
  }
  return out;
}

}  // namespace sswave
