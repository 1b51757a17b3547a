#include "sswave/evolve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sswave/energy.hpp"
#include "sswave/family.hpp"
#include "sswave/sphere_basis.hpp"

namespace sswave {

namespace {

int degree_of_column(int col) {
  int l = static_cast<int>(std::sqrt(static_cast<double>(col)));
  while (l * l > col) --l;
  while ((l + 1) * (l + 1) <= col) ++l;
  return l;
}

double auto_step(const BallGrid& grid) {
  const double nn = static_cast<double>(grid.radial.N) * grid.radial.N +
                    static_cast<double>(grid.sphere.L) * grid.sphere.L;
  return 0.5 * kCflLimit / nn;
}

struct Workspace {
  const BallGrid& grid;
  EvolutionConfig cfg;
  int N, L;
  double q1, q2;
  bool axisym;
  int ncols;
  std::vector<int> col_deg;

  Eigen::MatrixXd R;                  // diag(rho) D1
  std::vector<Eigen::MatrixXd> lap;   // radial Laplacian per degree
  Eigen::MatrixXd evenP;              // orthogonal projector onto even radial polynomials
  SphereBasis basis;

  Eigen::MatrixXd synthM;  // modal -> values  (values = C * synthM)
  Eigen::MatrixXd analyM;  // values -> modal  (C = F * analyM)
  Eigen::MatrixXd V;       // potential samples, (N+1) x value width
  Eigen::MatrixXd cheb;    // radial Chebyshev analysis matrix
  int dealias_cut;

  Workspace(const BallGrid& g, const EvolutionConfig& c)
      : grid(g), cfg(c), N(g.radial.N), L(g.sphere.L) {
    if (!(cfg.p > 1.0)) throw std::invalid_argument("evolve: requires p > 1");
    q1 = 2.0 / (cfg.p - 1.0);
    q2 = q1 + 1.0;
    axisym = cfg.axisymmetric;
    if (axisym && cfg.mode == EvolveMode::linear_a &&
        (cfg.a[0] != 0.0 || cfg.a[1] != 0.0))
      throw std::invalid_argument(
          "evolve: axisymmetric path needs the potential boost along the third axis");

    ncols = axisym ? (L + 1) : sh_count(L);
    col_deg.resize(ncols);
    for (int c = 0; c < ncols; ++c) col_deg[c] = axisym ? c : degree_of_column(c);

    R = grid.radial.rho.asDiagonal() * grid.radial.D1;

    lap.resize(L + 1);
    for (int l = 0; l <= L; ++l) {
      Eigen::MatrixXd m = grid.radial.D2;
      for (int k = 1; k <= N; ++k) {
        const double r = grid.radial.rho[k];
        m.row(k) += (2.0 / r) * grid.radial.D1.row(k);
        m(k, k) -= l * (l + 1.0) / (r * r);
      }
      // Origin row: smooth degree-l profiles vanish like rho^l, so the
      // radial Laplacian at 0 is 3 f''(0) for l = 0 and 0 otherwise.
      if (l == 0)
        m.row(0) = 3.0 * grid.radial.D2.row(0);
      else
        m.row(0).setZero();
      lap[l] = std::move(m);
    }

    // The degree-0 radial profile is an even function of rho, but plain
    // collocation on [0,1] lets roundoff seed an odd component for which the
    // origin rule above is inconsistent; that feedback is violently unstable
    // (growth rates ~N^2). The dynamics map even polynomials to even
    // polynomials exactly, so projecting the degree-0 state columns back
    // onto the even subspace after every step kills the seed without
    // deforming the operator. (Composing the projector into lap[0] instead
    // leaves the odd directions coupled through the transport term and
    // manufactures a spurious near-neutral mode that drifts secularly.)
    // The l >= 1 blocks are dissipative without any projection.
    {
      const int half = N / 2 + 1;
      Eigen::MatrixXd V(N + 1, half);
      for (int k = 0; k <= N; ++k) {
        const double x = 2.0 * grid.radial.rho[k] * grid.radial.rho[k] - 1.0;
        const double t = std::acos(std::clamp(x, -1.0, 1.0));
        for (int j = 0; j < half; ++j) V(k, j) = std::cos(j * t);
      }
      // Q Q^T with orthonormal Q keeps the projector idempotent and exact on
      // its range at roundoff level regardless of the basis conditioning.
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(V);
      const Eigen::MatrixXd Q =
          qr.householderQ() * Eigen::MatrixXd::Identity(N + 1, half);
      evenP = Q * Q.transpose();
    }

    basis = sphere_basis(grid.sphere, L);
    if (axisym) {
      synthM = basis.P0.transpose();  // (L+1 degrees) x (polar nodes)
      analyM.resize(basis.P0.rows(), L + 1);
      for (int i = 0; i < basis.P0.rows(); ++i)
        analyM.row(i) = 2.0 * M_PI * grid.sphere.wtheta[i] * basis.P0.row(i);
    } else {
      synthM = basis.Y.transpose();
      analyM = basis.Yw;
    }

    if (cfg.mode == EvolveMode::linear_a) {
      const double kv = 2.0 * cfg.p * (cfg.p + 1.0) / ((cfg.p - 1.0) * (cfg.p - 1.0));
      const BoostCoefficients bc = boost_coefficients(cfg.a);
      const int width = value_width();
      V.resize(N + 1, width);
      for (int k = 0; k <= N; ++k)
        for (int s = 0; s < width; ++s) {
          const double B = bc.A0 - bc.A.dot(value_node(k, s));
          V(k, s) = kv / (B * B);
        }
    }

    cheb.resize(N + 1, N + 1);
    for (int j = 0; j <= N; ++j)
      for (int k = 0; k <= N; ++k) {
        const double hj = (j == 0 || j == N) ? 0.5 : 1.0;
        const double hk = (k == 0 || k == N) ? 0.5 : 1.0;
        cheb(j, k) = (2.0 / N) * hj * hk * std::cos(j * M_PI * (N - k) / N);
      }

    dealias_cut = (2 * L) / 3;
  }

  int value_width() const { return axisym ? grid.sphere.polar_count() : grid.sphere.count(); }

  Vec3 value_node(int k, int s) const {
    if (!axisym) return grid.node(k, s);
    const double th = grid.sphere.theta[s];
    return grid.radial.rho[k] * Vec3(std::sin(th), 0.0, std::cos(th));
  }

  Eigen::MatrixXd values_of(const Eigen::MatrixXd& C) const { return C * synthM; }

  void add_pointwise(const Eigen::MatrixXd& C1, Eigen::MatrixXd& out2) const {
    if (cfg.mode == EvolveMode::linear_free) return;
    Eigen::MatrixXd F = values_of(C1);
    if (cfg.mode == EvolveMode::nonlinear) {
      const double p = cfg.p;
      F = F.unaryExpr(
          [p](double v) { return std::copysign(std::pow(std::abs(v), p), v); });
    } else {
      F.array() *= V.array();
    }
    Eigen::MatrixXd C = F * analyM;
    if (cfg.dealias)
      for (int c = 0; c < ncols; ++c)
        if (col_deg[c] > dealias_cut) C.col(c).setZero();
    out2 += C;
  }

  void rhs_modal(const Eigen::MatrixXd& C1, const Eigen::MatrixXd& C2,
                 Eigen::MatrixXd& O1, Eigen::MatrixXd& O2) const {
    O1 = -(R * C1) - q1 * C1 + C2;
    O2 = -(R * C2) - q2 * C2;
    for (int c = 0; c < ncols; ++c) O2.col(c) += lap[col_deg[c]] * C1.col(c);
    add_pointwise(C1, O2);
  }

  // Expand compact columns to a full modal pair (identity when not axisym).
  ModalPair to_modal(const Eigen::MatrixXd& C1, const Eigen::MatrixXd& C2) const {
    ModalPair mp(N, L);
    if (axisym) {
      for (int l = 0; l <= L; ++l) {
        mp.c1.coef.col(sh_index(l, 0)) = C1.col(l);
        mp.c2.coef.col(sh_index(l, 0)) = C2.col(l);
      }
    } else {
      mp.c1.coef = C1;
      mp.c2.coef = C2;
    }
    return mp;
  }

  StatePair to_samples(const Eigen::MatrixXd& C1, const Eigen::MatrixXd& C2) const {
    StatePair sp = StatePair::zero(grid);
    const int S = grid.sphere.count();
    const int nphi = grid.sphere.azimuthal_count();
    const Eigen::MatrixXd F1 = values_of(C1);
    const Eigen::MatrixXd F2 = values_of(C2);
    for (int k = 0; k <= N; ++k)
      for (int s = 0; s < S; ++s) {
        const int col = axisym ? s / nphi : s;
        sp.f1[grid.index(k, s)] = F1(k, col);
        sp.f2[grid.index(k, s)] = F2(k, col);
      }
    return sp;
  }

  double tail_fraction(const Eigen::MatrixXd& C1, const Eigen::MatrixXd& C2) const {
    const Eigen::MatrixXd A1 = cheb * C1;
    const Eigen::MatrixXd A2 = cheb * C2;
    const double total = A1.squaredNorm() + A2.squaredNorm();
    if (total < 1e-20) return 0.0;
    const int jcut = (2 * N) / 3 + 1;
    double tail = 0.0;
    for (int c = 0; c < ncols; ++c) {
      const bool top_degree = col_deg[c] == L;
      for (int j = 0; j <= N; ++j) {
        const double e = A1(j, c) * A1(j, c) + A2(j, c) * A2(j, c);
        if (top_degree || j >= jcut) tail += e;
      }
    }
    return tail / total;
  }
};

}  // namespace

StatePair rhs(const BallGrid& grid, const StatePair& u, const EvolutionConfig& cfg) {
  EvolutionConfig c = cfg;
  c.axisymmetric = false;  // samples arrive on the full grid
  Workspace ws(grid, c);
  const ModalPair mp = analyze_pair(grid, ws.basis, u, grid.sphere.L);
  Eigen::MatrixXd O1, O2;
  ws.rhs_modal(mp.c1.coef, mp.c2.coef, O1, O2);
  return ws.to_samples(O1, O2);
}

Trajectory integrate(const BallGrid& grid, const StatePair& initial,
                     const EvolutionConfig& cfg) {
  Workspace ws(grid, cfg);

  double h = cfg.dtau;
  const double limit = kCflLimit / (static_cast<double>(ws.N) * ws.N +
                                    static_cast<double>(ws.L) * ws.L);
  if (h <= 0.0) h = auto_step(grid);
  if (h > limit * (1.0 + 1e-12))
    throw std::invalid_argument("evolve: step exceeds the stability limit");
  if (!(cfg.tau_max > 0.0)) throw std::invalid_argument("evolve: tau_max must be positive");

  const int steps = std::max(1, static_cast<int>(std::ceil(cfg.tau_max / h)));
  h = cfg.tau_max / steps;
  int cadence = cfg.cadence;
  if (cadence <= 0) cadence = std::max(1, steps / 256);

  // Initial modal state.
  const ModalPair mp0 = analyze_pair(grid, ws.basis, initial, grid.sphere.L);
  Eigen::MatrixXd C1(ws.N + 1, ws.ncols), C2(ws.N + 1, ws.ncols);
  if (ws.axisym) {
    double off = 0.0, tot = 0.0;
    for (int c = 0; c < sh_count(ws.L); ++c) {
      const double mass = mp0.c1.coef.col(c).squaredNorm() + mp0.c2.coef.col(c).squaredNorm();
      tot += mass;
      const int l = degree_of_column(c);
      if (c != sh_index(l, 0)) off += mass;
    }
    if (off > 1e-20 * std::max(tot, 1.0))
      throw std::invalid_argument("evolve: axisymmetric path given non-axisymmetric data");
    for (int l = 0; l <= ws.L; ++l) {
      C1.col(l) = mp0.c1.coef.col(sh_index(l, 0));
      C2.col(l) = mp0.c2.coef.col(sh_index(l, 0));
    }
  } else {
    C1 = mp0.c1.coef;
    C2 = mp0.c2.coef;
  }

  // Degree-0 parity guard; column 0 is the (l,m) = (0,0) mode in both layouts.
  auto project_even = [&]() {
    C1.col(0) = ws.evenP * C1.col(0);
    C2.col(0) = ws.evenP * C2.col(0);
  };
  project_even();

  Trajectory traj;
  traj.dtau = h;
  std::vector<Eigen::VectorXd> amp_rows;

  auto record = [&](double tau) {
    traj.times.push_back(tau);
    const Eigen::MatrixXd F1 = ws.values_of(C1);
    traj.sup1.push_back(F1.cwiseAbs().maxCoeff());
    Eigen::VectorXd amps = Eigen::VectorXd::Zero(ws.L + 1);
    for (int c = 0; c < ws.ncols; ++c) {
      double acc = 0.0;
      for (int k = 0; k <= ws.N; ++k) {
        const double wk = grid.radial.w[k] * grid.radial.rho[k] * grid.radial.rho[k];
        acc += wk * (C1(k, c) * C1(k, c) + C2(k, c) * C2(k, c));
      }
      amps[ws.col_deg[c]] += acc;
    }
    amp_rows.push_back(amps.cwiseSqrt());
    if (cfg.diagnostics == DiagnosticsLevel::full) {
      const StatePair sp = ws.to_samples(C1, C2);
      traj.norm_total.push_back(norm_total(grid, sp));
      traj.norm_sobolev.push_back(norm_sobolev(grid, sp));
    }
    if (cfg.keep_states) traj.states.push_back(ws.to_modal(C1, C2));
  };

  record(0.0);

  Eigen::MatrixXd k11, k12, k21, k22, k31, k32, k41, k42, T1, T2;
  bool stopped = false;
  int done = 0;
  for (int step = 1; step <= steps && !stopped; ++step) {
    ws.rhs_modal(C1, C2, k11, k12);
    T1 = C1 + 0.5 * h * k11;
    T2 = C2 + 0.5 * h * k12;
    ws.rhs_modal(T1, T2, k21, k22);
    T1 = C1 + 0.5 * h * k21;
    T2 = C2 + 0.5 * h * k22;
    ws.rhs_modal(T1, T2, k31, k32);
    T1 = C1 + h * k31;
    T2 = C2 + h * k32;
    ws.rhs_modal(T1, T2, k41, k42);
    C1 += (h / 6.0) * (k11 + 2.0 * k21 + 2.0 * k31 + k41);
    C2 += (h / 6.0) * (k12 + 2.0 * k22 + 2.0 * k32 + k42);
    project_even();

    const double tau = step * h;
    const double cmax = std::max(C1.cwiseAbs().maxCoeff(), C2.cwiseAbs().maxCoeff());
    if (!std::isfinite(cmax) || cmax > 1e8) {
      traj.reason = StopReason::overflow;
      stopped = true;
    } else if (cfg.sup_stop > 0.0 &&
               ws.values_of(C1).cwiseAbs().maxCoeff() > cfg.sup_stop) {
      traj.reason = StopReason::overflow;
      stopped = true;
    }

    if (stopped || step % cadence == 0 || step == steps) {
      if (!stopped && cfg.mode == EvolveMode::nonlinear &&
          ws.tail_fraction(C1, C2) > 0.01) {
        traj.reason = StopReason::tail_blowup;
        stopped = true;
      }
      if (std::isfinite(C1.cwiseAbs().maxCoeff())) record(tau);
      traj.final_time = tau;
    }
    done = step;
    if (stopped) traj.final_time = tau;
  }
  traj.steps_taken = done;
  if (!stopped) {
    traj.reason = StopReason::horizon;
    traj.final_time = cfg.tau_max;
  }

  traj.mode_amplitude.resize(static_cast<Eigen::Index>(amp_rows.size()), ws.L + 1);
  for (size_t i = 0; i < amp_rows.size(); ++i)
    traj.mode_amplitude.row(static_cast<Eigen::Index>(i)) = amp_rows[i].transpose();
  return traj;
}

double linear_decay_rate(const Trajectory& traj) {
  const std::vector<double>& y = traj.norm_total.empty() ? traj.sup1 : traj.norm_total;
  const size_t n = std::min(y.size(), traj.times.size());
  std::vector<double> ts, ls;
  for (size_t i = n / 2; i < n; ++i) {
    if (y[i] > 0.0 && std::isfinite(y[i])) {
      ts.push_back(traj.times[i]);
      ls.push_back(std::log(y[i]));
    }
  }
  if (ts.size() < 4) return std::numeric_limits<double>::quiet_NaN();
  double tm = 0.0, lm = 0.0;
  for (size_t i = 0; i < ts.size(); ++i) {
    tm += ts[i];
    lm += ls[i];
  }
  tm /= ts.size();
  lm /= ls.size();
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < ts.size(); ++i) {
    num += (ts[i] - tm) * (ls[i] - lm);
    den += (ts[i] - tm) * (ts[i] - tm);
  }
  return den > 0.0 ? num / den : std::numeric_limits<double>::quiet_NaN();
}

}  // namespace sswave
