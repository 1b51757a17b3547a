#include "sswave/modulation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sswave/energy.hpp"
#include "sswave/sphere_basis.hpp"

namespace sswave {

namespace {

constexpr double kBlowupFactor = 10.0;
constexpr double kCollapseFactor = 0.3;

struct LineFit {
  double slope = 0.0, intercept = 0.0, se_slope = 0.0;
  int n = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  LineFit f;
  f.n = static_cast<int>(std::min(x.size(), y.size()));
  if (f.n < 2) return f;
  double xm = 0.0, ym = 0.0;
  for (int i = 0; i < f.n; ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= f.n;
  ym /= f.n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < f.n; ++i) {
    sxx += (x[i] - xm) * (x[i] - xm);
    sxy += (x[i] - xm) * (y[i] - ym);
  }
  if (sxx <= 0.0) {
    f.n = 0;
    return f;
  }
  f.slope = sxy / sxx;
  f.intercept = ym - f.slope * xm;
  double ss = 0.0;
  for (int i = 0; i < f.n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  if (f.n > 2) f.se_slope = std::sqrt(ss / (f.n - 2) / sxx);
  return f;
}

Vec3 clamp_rapidity(Vec3 a) {
  const double cap = 0.9 * kMaxRapidity;
  const double n = a.norm();
  if (n > cap) a *= cap / n;
  return a;
}

}  // namespace

RapidityFit fit_rapidity(const BallGrid& grid, const StatePair& state, double p,
                         const Vec3& guess) {
  RapidityFit out;
  const StateJet psi = state_jet_numeric(grid, state);
  Vec3 a = clamp_rapidity(guess);

  const int max_iter = 25;
  for (int it = 0;; ++it) {
    const StateJet prof = profile_jet(grid, p, a);
    const StateJet phi = psi - prof;

    std::array<StateJet, 3> h;
    Eigen::Vector3d F;
    double hscale = 0.0;
    for (int j = 0; j < 3; ++j) {
      h[j] = tangent_h_jet(grid, p, a, j);
      F[j] = inner(grid, phi, h[j], EnergyForm::total);
      hscale = std::max(hscale, norm_total(grid, h[j]));
    }

    out.a_hat = a;
    out.orthogonality = F;
    out.residual_norm = norm_total(grid, phi);
    out.iterations = it;

    const double tol = 1e-12 * std::max(1.0, hscale);
    if (F.cwiseAbs().maxCoeff() <= tol) {
      out.converged = true;
      return out;
    }
    if (it >= max_iter) return out;

    Eigen::Matrix3d J;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k <= j; ++k) {
        const StateJet dd = profile_dd_jet(grid, p, a, j, k);
        const double val =
            -inner(grid, h[k], h[j], EnergyForm::total) + inner(grid, phi, dd, EnergyForm::total);
        J(j, k) = val;
        // The mixed profile derivative is symmetric, and so is (h_k | h_j)
        // up to quadrature roundoff, so build the Jacobian symmetric.
        J(k, j) = val;
      }
    const Eigen::Vector3d step = J.fullPivLu().solve(F);
    if (!step.allFinite()) return out;
    a = clamp_rapidity(a - step);
    if (step.norm() < 1e-15) {
      out.a_hat = a;
      return out;
    }
  }
}

BlowupTimeFit estimate_blowup_time(const std::vector<double>& t,
                                   const std::vector<double>& u_center, double p) {
  const size_t n = std::min(t.size(), u_center.size());
  if (n < 3) throw std::invalid_argument("estimate_blowup_time: needs at least 3 samples");
  BlowupTimeFit out;
  std::vector<double> ts, ys;
  double prev = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    if (!(u_center[i] > 0.0) || !std::isfinite(u_center[i])) {
      out.monotone = false;
      continue;
    }
    if (u_center[i] <= prev) out.monotone = false;
    prev = u_center[i];
    ts.push_back(t[i]);
    ys.push_back(std::pow(u_center[i], -(p - 1.0) / 2.0));
  }
  const LineFit lf = fit_line(ts, ys);
  out.slope = lf.slope;
  if (lf.n < 2 || !(lf.slope < 0.0)) {
    out.monotone = false;
    out.T_hat = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.T_hat = -lf.intercept / lf.slope;
  return out;
}

TheoremNorms theorem_norm_diagnostics(const BallGrid& grid, const StatePair& psi,
                                      double p, double T, double t, const Vec3& a_ref) {
  if (!(T > 0.0) || !(t >= 0.0) || !(t < T))
    throw std::invalid_argument("theorem_norm_diagnostics: requires 0 <= t < T");
  const StatePair d = psi - profile_psi_a(grid, p, a_ref);
  const StateJet dj = state_jet_numeric(grid, d);

  const Eigen::VectorXd hess2 = dj.f1.h.rowwise().squaredNorm();
  const Eigen::VectorXd grad1 = dj.f1.g.rowwise().squaredNorm();
  const Eigen::VectorXd grad2 = dj.f2.g.rowwise().squaredNorm();
  const Eigen::VectorXd v1sq = dj.f1.v.array().square();
  const Eigen::VectorXd v2sq = dj.f2.v.array().square();

  TheoremNorms out;
  out.h2h1 = std::sqrt(integrate_ball(grid, hess2) + integrate_ball(grid, grad2));
  out.h1l2 = std::sqrt(integrate_ball(grid, grad1) + integrate_ball(grid, v2sq));
  out.l2 = std::sqrt(integrate_ball(grid, v1sq));
  return out;
}

RateFit rate_fit(const std::vector<double>& tau, const std::vector<double>& values) {
  RateFit out;
  const size_t n = std::min(tau.size(), values.size());
  double vmax = 0.0;
  for (size_t i = 0; i < n; ++i)
    if (std::isfinite(values[i])) vmax = std::max(vmax, values[i]);
  const double floor = 1e-13 * vmax;

  std::vector<double> ts, ls;
  for (size_t i = 0; i < n; ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) continue;
    if (values[i] < floor) {
      out.truncated = true;
      continue;
    }
    ts.push_back(tau[i]);
    ls.push_back(std::log(values[i]));
  }
  out.used = static_cast<int>(ts.size());
  if (out.used < 5) {
    out.omega = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const LineFit lf = fit_line(ts, ls);
  out.omega = -lf.slope;
  out.band = 2.0 * lf.se_slope;
  return out;
}

ModulationFit fit_trajectory(const BallGrid& grid, const Trajectory& traj, double p,
                             double window_start) {
  if (traj.states.size() != traj.times.size() || traj.states.empty())
    throw std::invalid_argument("fit_trajectory: trajectory must keep modal states");
  const SphereBasis basis = sphere_basis(grid.sphere, grid.sphere.L);

  ModulationFit out;
  Vec3 warm = Vec3::Zero();
  for (size_t i = 0; i < traj.states.size(); ++i) {
    const StatePair sp = synthesize_pair(grid, basis, traj.states[i]);
    const RapidityFit rf = fit_rapidity(grid, sp, p, warm);
    warm = rf.a_hat;
    out.tau.push_back(traj.times[i]);
    out.a_hat.push_back(rf.a_hat);
    out.residual_norm.push_back(rf.residual_norm);
    out.orthogonality_max.push_back(rf.orthogonality.cwiseAbs().maxCoeff());
    out.all_converged = out.all_converged && rf.converged;
    if (rf.converged) out.a_inf = rf.a_hat;
  }

  std::vector<double> wt, wv;
  for (size_t i = 0; i < out.tau.size(); ++i)
    if (out.tau[i] >= window_start) {
      wt.push_back(out.tau[i]);
      wv.push_back(out.residual_norm[i]);
    }
  out.residual_rate = rate_fit(wt, wv);
  return out;
}

StabilityResult stability_run(const StabilityConfig& cfg) {
  if (!(cfg.p > 1.0)) throw std::invalid_argument("stability_run: requires p > 1");
  const BallGrid grid = ball_grid(cfg.N, cfg.L);
  const double cp = profile_amplitude(cfg.p);
  const StatePair psi0 = profile_psi_a(grid, cfg.p, Vec3::Zero());

  const double delta = cfg.delta;
  ScalarField v1 = cfg.v1 ? ScalarField([&, delta](const Vec3& x) { return delta * cfg.v1(x); })
                          : ScalarField([](const Vec3&) { return 0.0; });
  ScalarField v2 = cfg.v2 ? ScalarField([&, delta](const Vec3& x) { return delta * cfg.v2(x); })
                          : ScalarField([](const Vec3&) { return 0.0; });

  auto initial = [&](double T) {
    return psi0 + prepare_data(grid, v1, v2, T, cfg.p);
  };

  StabilityResult res;

  // -1 collapse, +1 finite-tau blowup, 0 unresolved at the horizon.
  auto classify = [&](double T) {
    EvolutionConfig ec;
    ec.p = cfg.p;
    ec.mode = EvolveMode::nonlinear;
    ec.dtau = cfg.dtau;
    ec.tau_max = cfg.tau_classify;
    ec.dealias = cfg.dealias;
    ec.diagnostics = DiagnosticsLevel::light;
    ec.axisymmetric = true;
    ec.sup_stop = kBlowupFactor * cp;
    const Trajectory tr = integrate(grid, initial(T), ec);
    ++res.bisection_runs;
    if (tr.reason == StopReason::overflow || tr.reason == StopReason::tail_blowup) return +1;
    if (!tr.sup1.empty() && tr.sup1.back() < kCollapseFactor * cp) return -1;
    return 0;
  };

  double lo = cfg.T_low, hi = cfg.T_high;
  if (classify(lo) != -1 || classify(hi) != +1) {
    res.classified = false;
    res.T_star = std::numeric_limits<double>::quiet_NaN();
    return res;
  }
  res.classified = true;

  while (res.bisection_runs < cfg.max_bisect && hi - lo > 8.0 * 1e-16 * hi) {
    const double mid = 0.5 * (lo + hi);
    const int c = classify(mid);
    if (c == 0) {
      lo = hi = mid;
      break;
    }
    (c > 0 ? hi : lo) = mid;
  }
  res.T_star = 0.5 * (lo + hi);

  // Diagnosed run at the critical frame time.
  EvolutionConfig ec;
  ec.p = cfg.p;
  ec.mode = EvolveMode::nonlinear;
  ec.dtau = cfg.dtau;
  ec.tau_max = cfg.tau_max;
  ec.dealias = cfg.dealias;
  ec.diagnostics = DiagnosticsLevel::full;
  ec.axisymmetric = true;
  ec.keep_states = true;
  {
    double h = ec.dtau;
    if (h <= 0.0)
      h = 0.5 * kCflLimit /
          (static_cast<double>(cfg.N) * cfg.N + static_cast<double>(cfg.L) * cfg.L);
    const int steps = std::max(1, static_cast<int>(std::ceil(ec.tau_max / h)));
    ec.cadence = std::max(1, steps / 120);
  }
  res.trajectory = integrate(grid, initial(res.T_star), ec);
  res.fit = fit_trajectory(grid, res.trajectory, cfg.p);

  // Theorem-norm series against the fitted asymptotic rapidity.
  const SphereBasis basis = sphere_basis(grid.sphere, grid.sphere.L);
  std::vector<double> ts, n1, n2, n3, tphys, ucenter;
  const double q1 = 2.0 / (cfg.p - 1.0);
  for (size_t i = 0; i < res.trajectory.states.size(); ++i) {
    const double tau = res.trajectory.times[i];
    const double t = res.T_star * (1.0 - std::exp(-tau));
    const StatePair sp = synthesize_pair(grid, basis, res.trajectory.states[i]);
    const TheoremNorms tn =
        theorem_norm_diagnostics(grid, sp, cfg.p, res.T_star, t, res.fit.a_inf);
    ts.push_back(tau);
    n1.push_back(tn.h2h1);
    n2.push_back(tn.h1l2);
    n3.push_back(tn.l2);
    res.final_norms = tn;

    const double center =
        res.trajectory.states[i].c1.coef(0, sh_index(0, 0)) / std::sqrt(4.0 * M_PI);
    tphys.push_back(t);
    ucenter.push_back(std::pow(res.T_star - t, -q1) * center);
  }

  std::vector<double> wt, w1, w2, w3;
  for (size_t i = 0; i < ts.size(); ++i)
    if (ts[i] >= 2.0) {
      wt.push_back(ts[i]);
      w1.push_back(n1[i]);
      w2.push_back(n2[i]);
      w3.push_back(n3[i]);
    }
  res.norm_rate_h2h1 = rate_fit(wt, w1);
  res.norm_rate_h1l2 = rate_fit(wt, w2);
  res.norm_rate_l2 = rate_fit(wt, w3);
  res.time_fit = estimate_blowup_time(tphys, ucenter, cfg.p);
  return res;
}

}  // namespace sswave
