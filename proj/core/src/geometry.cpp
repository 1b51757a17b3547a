#include "sswave/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "sswave/sphere_basis.hpp"

namespace sswave {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

RadialGrid chebyshev_lobatto_grid(int N) {
  if (N < 2 || N % 2 != 0)
    throw std::invalid_argument("chebyshev_lobatto_grid: N must be even and >= 2");

  RadialGrid g;
  g.N = N;
  g.rho.resize(N + 1);
  for (int k = 0; k <= N; ++k) g.rho[k] = 0.5 * (1.0 - std::cos(kPi * k / N));
  g.rho[0] = 0.0;
  g.rho[N] = 1.0;

  g.D1 = barycentric_diff_matrix(g.rho, 1);
  g.D2 = barycentric_diff_matrix(g.rho, 2);

  // Clenshaw-Curtis weights for the N+1 Lobatto nodes, scaled to [0,1].
  // Standard cosine-sum form; the node ordering is symmetric so no reversal
  // is needed.
  g.w.setZero(N + 1);
  g.w[0] = g.w[N] = 0.5 / (double(N) * N - 1.0);
  for (int k = 1; k < N; ++k) {
    double v = 1.0;
    for (int j = 1; j < N / 2; ++j)
      v -= 2.0 * std::cos(2.0 * kPi * j * k / N) / (4.0 * j * j - 1.0);
    v -= std::cos(kPi * k) / (double(N) * N - 1.0);
    g.w[k] = v / N;
  }
  return g;
}

Eigen::MatrixXd barycentric_diff_matrix(const Eigen::VectorXd& nodes, int order) {
  const int n = int(nodes.size());
  if (order != 1 && order != 2)
    throw std::invalid_argument("barycentric_diff_matrix: order must be 1 or 2");

  // log-scaled barycentric weights: logw_i = -sum_j log|x_i - x_j|, sign
  // tracked separately. Only ratios w_j / w_i enter the matrices.
  Eigen::VectorXd logw(n);
  Eigen::VectorXd sign(n);
  for (int i = 0; i < n; ++i) {
    double ls = 0.0;
    double sg = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = nodes[i] - nodes[j];
      if (d == 0.0) throw std::invalid_argument("barycentric_diff_matrix: repeated node");
      ls -= std::log(std::abs(d));
      if (d < 0) sg = -sg;
    }
    logw[i] = ls;
    sign[i] = sg;
  }

  Eigen::MatrixXd D1(n, n);
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double r = sign[j] / sign[i] * std::exp(logw[j] - logw[i]);
      D1(i, j) = r / (nodes[i] - nodes[j]);
      rowsum += D1(i, j);
    }
    D1(i, i) = -rowsum;  // derivative of constants vanishes exactly
  }
  if (order == 1) return D1;

  Eigen::MatrixXd D2(n, n);
  for (int i = 0; i < n; ++i) {
    double rowsum = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      D2(i, j) = 2.0 * D1(i, j) * (D1(i, i) - 1.0 / (nodes[i] - nodes[j]));
      rowsum += D2(i, j);
    }
    D2(i, i) = -rowsum;
  }
  return D2;
}

double barycentric_interpolate(const Eigen::VectorXd& nodes,
                               const Eigen::VectorXd& values, double x) {
  const int n = int(nodes.size());
  // Exact hit on a node.
  for (int i = 0; i < n; ++i)
    if (x == nodes[i]) return values[i];

  double lognum_max = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd logw(n), sign(n);
  for (int i = 0; i < n; ++i) {
    double ls = 0.0, sg = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = nodes[i] - nodes[j];
      ls -= std::log(std::abs(d));
      if (d < 0) sg = -sg;
    }
    logw[i] = ls;
    sign[i] = sg;
    lognum_max = std::max(lognum_max, ls);
  }
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double c = sign[i] * std::exp(logw[i] - lognum_max) / (x - nodes[i]);
    num += c * values[i];
    den += c;
  }
  return num / den;
}

void gauss_legendre(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  nodes.resize(n);
  weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration from the Chebyshev-based initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

SphereQuadrature sphere_quadrature(int L) {
  if (L < 1) throw std::invalid_argument("sphere_quadrature: L must be >= 1");

  SphereQuadrature q;
  q.L = L;
  gauss_legendre(L + 1, q.ctheta, q.wtheta);
  q.theta.resize(L + 1);
  for (int i = 0; i <= L; ++i) q.theta[i] = std::acos(q.ctheta[i]);

  const int nphi = 2 * L + 1;
  q.phi.resize(nphi);
  for (int j = 0; j < nphi; ++j) q.phi[j] = 2.0 * kPi * j / nphi;

  const int S = q.count();
  q.weight.resize(S);
  q.omega.resize(S, 3);
  const double wphi = 2.0 * kPi / nphi;
  for (int i = 0; i <= L; ++i) {
    const double st = std::sin(q.theta[i]);
    const double ct = q.ctheta[i];
    for (int j = 0; j < nphi; ++j) {
      const int s = i * nphi + j;
      q.weight[s] = q.wtheta[i] * wphi;
      q.omega(s, 0) = st * std::cos(q.phi[j]);
      q.omega(s, 1) = st * std::sin(q.phi[j]);
      q.omega(s, 2) = ct;
    }
  }
  return q;
}

BallGrid ball_grid(int N, int L) { return BallGrid{chebyshev_lobatto_grid(N), sphere_quadrature(L)}; }

double integrate_ball(const BallGrid& grid, const Eigen::VectorXd& f) {
  const int S = grid.sphere.count();
  double total = 0.0;
  for (int k = 0; k <= grid.radial.N; ++k) {
    double shell = 0.0;
    for (int s = 0; s < S; ++s) shell += grid.sphere.weight[s] * f[grid.index(k, s)];
    const double rho = grid.radial.rho[k];
    total += grid.radial.w[k] * rho * rho * shell;
  }
  return total;
}

double integrate_boundary(const BallGrid& grid, const Eigen::VectorXd& f) {
  const int S = grid.sphere.count();
  const int k = grid.radial.N;
  double total = 0.0;
  for (int s = 0; s < S; ++s) total += grid.sphere.weight[s] * f[grid.index(k, s)];
  return total;
}

Eigen::MatrixXd gradient_on_ball(const BallGrid& grid, const Eigen::VectorXd& f) {
  const int S = grid.sphere.count();
  const int nr = grid.radial.node_count();
  if (int(f.size()) != nr * S)
    throw std::invalid_argument("gradient_on_ball: field size does not match grid");

  // Basis tables are cached per quadrature order inside sphere_basis's
  // caller; here the full band limit of the quadrature is used.
  static thread_local int cached_L = -1;
  static thread_local SphereBasis basis;
  if (cached_L != grid.sphere.L) {
    basis = sphere_basis(grid.sphere, grid.sphere.L);
    cached_L = grid.sphere.L;
  }

  // Field as a (radial node) x (sphere node) matrix.
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      F(f.data(), nr, S);

  // Radial derivative along each ray.
  Eigen::MatrixXd dF = grid.radial.D1 * F;

  // Modal coefficients per shell: C(k, idx) = sum_s w_s F(k,s) Y(s,idx).
  Eigen::MatrixXd C = F * basis.Yw;

  Eigen::MatrixXd grad(nr * S, 3);
  for (int j = 0; j < 3; ++j) {
    // Tangential part per shell, divided by rho (skip the center).
    Eigen::MatrixXd ang = C * basis.tangential(j).transpose();  // (nr x S)
    for (int k = 0; k < nr; ++k) {
      const double rho = grid.radial.rho[k];
      for (int s = 0; s < S; ++s) {
        double v = grid.sphere.omega(s, j) * dF(k, s);
        if (k > 0) v += ang(k, s) / rho;
        grad(grid.index(k, s), j) = v;
      }
    }
    // The center value is the sphere average of the ray derivatives:
    // grad_j f(0) = (3/4pi) int omega_j (d/drho f)(0, omega) dsigma.
    double c = 0.0;
    for (int s = 0; s < S; ++s)
      c += grid.sphere.weight[s] * grid.sphere.omega(s, j) * dF(0, s);
    c *= 3.0 / (4.0 * kPi);
    for (int s = 0; s < S; ++s) grad(grid.index(0, s), j) = c;
  }
  return grad;
}

}  // namespace sswave
