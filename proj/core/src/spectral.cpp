#include "sswave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "sswave/sphere_basis.hpp"

namespace sswave {

namespace {

struct Exponents {
  double q1, q2, kv;
};

Exponents exponents(double p) {
  if (!(p > 1.0)) throw std::invalid_argument("spectral: requires p > 1");
  Exponents e;
  e.q1 = 2.0 / (p - 1.0);
  e.q2 = e.q1 + 1.0;
  e.kv = 2.0 * p * (p + 1.0) / ((p - 1.0) * (p - 1.0));
  return e;
}

void check_order(int N) {
  if (N < 16) throw std::invalid_argument("spectral: radial order must be at least 16");
}

// Writes the degree-ell diagonal block without the potential term. The
// transport part of the generator acts on v(z) as ell*I + 2 z d/dz and the
// Laplacian as (4 ell + 6) d/dz + 4 z d^2/dz^2.
void fill_diagonal_block(const Exponents& e, int ell, const Eigen::VectorXd& z,
                         const Eigen::MatrixXd& Dz, const Eigen::MatrixXd& Dzz,
                         int row0, Eigen::MatrixXd& mat) {
  const int n = static_cast<int>(z.size());
  Eigen::MatrixXd transport = 2.0 * z.asDiagonal() * Dz;
  transport.diagonal().array() += static_cast<double>(ell);

  mat.block(row0, row0, n, n) = -transport;
  mat.block(row0, row0, n, n).diagonal().array() -= e.q1;
  mat.block(row0, row0 + n, n, n).setIdentity();

  mat.block(row0 + n, row0, n, n) =
      4.0 * z.asDiagonal() * Dzz + (4.0 * ell + 6.0) * Dz;
  mat.block(row0 + n, row0 + n, n, n) = -transport;
  mat.block(row0 + n, row0 + n, n, n).diagonal().array() -= e.q2;
}

// Angular moments G_k(lp, l) = integral of cos^k(theta) Y_{lp,m} Y_{l,m}
// over the sphere, one (Lmax+1)^2 matrix per power k. Gauss-Legendre in
// cos(theta) is exact for these polynomial integrands.
std::vector<Eigen::MatrixXd> angular_moments(int Lmax, int m, int kmax) {
  const int ngl = Lmax + kmax / 2 + 4;
  Eigen::VectorXd x, w;
  gauss_legendre(ngl, x, w);

  const double fac = (m != 0) ? std::sqrt(2.0) : 1.0;
  Eigen::MatrixXd pb(ngl, Lmax + 1);  // normalized polar factors
  pb.setZero();
  for (int q = 0; q < ngl; ++q) {
    const double theta = std::acos(std::clamp(x[q], -1.0, 1.0));
    for (int l = m; l <= Lmax; ++l)
      pb(q, l) = eval_harmonic(l, m, theta, 0.0).y / fac;
  }

  std::vector<Eigen::MatrixXd> G(kmax + 1, Eigen::MatrixXd::Zero(Lmax + 1, Lmax + 1));
  Eigen::VectorXd xk = Eigen::VectorXd::Ones(ngl);
  for (int k = 0; k <= kmax; ++k) {
    for (int lp = m; lp <= Lmax; ++lp)
      for (int l = m; l <= Lmax; ++l) {
        if ((k + l + lp) % 2 != 0 || k < std::abs(l - lp)) continue;
        double acc = 0.0;
        for (int q = 0; q < ngl; ++q) acc += w[q] * xk[q] * pb(q, lp) * pb(q, l);
        G[k](lp, l) = 2.0 * M_PI * acc;
      }
    xk.array() *= x.array();
  }
  return G;
}

// EISPACK-style Parlett-Reinsch balancing; returns the diagonal similarity
// scale d with balanced = diag(d)^{-1} A diag(d).
Eigen::VectorXd balance_in_place(Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  const double radix = 2.0, radix2 = 4.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double c = A.col(i).cwiseAbs().sum() - std::abs(A(i, i));
      double r = A.row(i).cwiseAbs().sum() - std::abs(A(i, i));
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        d[i] *= f;
        A.row(i) /= f;
        A.col(i) *= f;
      }
    }
  }
  return d;
}

// Deterministic normalization: unit norm, largest-magnitude entry rotated to
// the positive real axis.
void normalize_vector(Eigen::VectorXcd& v) {
  int imax = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    const double a = std::abs(v[i]);
    if (a > best) {
      best = a;
      imax = i;
    }
  }
  if (best <= 0.0) return;
  v *= std::conj(v[imax]) / best;
  v.normalize();
}

struct Decomposition {
  std::vector<Eigenpair> right;
  std::vector<Eigenpair> left;
};

// The generator is severely non-normal: the condition numbers of the deeper
// mode eigenvalues grow so fast with N and |lambda| that double-precision
// entry rounding alone displaces them by 1e-5..1, and eigenvalues where the
// two analytic families collide (integer 2(p+1)/(p-1), e.g. p = 5) form
// defective pairs splitting by ~1e-3. Assembling the single-degree operator
// in quad precision and taking its Schur form keeps every eigenvalue with a
// polynomial eigenfunction exact to far below the filter tolerance. Values
// only; eigenvectors keep the double path, whose accuracy all downstream
// projections tolerate.
using QuadReal = boost::multiprecision::cpp_bin_float_quad;
using QuadMatrix = Eigen::Matrix<QuadReal, Eigen::Dynamic, Eigen::Dynamic>;
using QuadVector = Eigen::Matrix<QuadReal, Eigen::Dynamic, 1>;

constexpr int kQuadValueLimit = 128;  // rows; cost grows as n^3 in software

QuadMatrix quad_diff_matrix(const QuadVector& nodes, int order) {
  const int n = static_cast<int>(nodes.size());
  QuadMatrix D1(n, n);
  for (int i = 0; i < n; ++i) {
    QuadReal rowsum = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      QuadReal ratio = -1;  // w_j / w_i over the shared factors
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        ratio *= (nodes[i] - nodes[k]) / (nodes[j] - nodes[k]);
      }
      D1(i, j) = ratio / (nodes[i] - nodes[j]);
      rowsum += D1(i, j);
    }
    D1(i, i) = -rowsum;
  }
  if (order == 1) return D1;
  QuadMatrix D2(n, n);
  for (int i = 0; i < n; ++i) {
    QuadReal rowsum = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      D2(i, j) = 2 * D1(i, j) * (D1(i, i) - 1 / (nodes[i] - nodes[j]));
      rowsum += D2(i, j);
    }
    D2(i, i) = -rowsum;
  }
  return D2;
}

QuadMatrix quad_mode_matrix(double p, int ell, int N) {
  const QuadReal pq(p);
  const QuadReal q1 = 2 / (pq - 1);
  const QuadReal q2 = q1 + 1;
  const QuadReal kv = 2 * pq * (pq + 1) / ((pq - 1) * (pq - 1));
  const QuadReal pi = acos(QuadReal(-1));

  const int n = N + 1;
  QuadVector z(n);
  for (int k = 0; k < n; ++k) z[k] = (1 - cos(pi * k / N)) / 2;
  z[0] = 0;
  z[N] = 1;
  const QuadMatrix Dz = quad_diff_matrix(z, 1);
  const QuadMatrix Dzz = quad_diff_matrix(z, 2);

  QuadMatrix transport = 2 * z.asDiagonal() * Dz;
  transport.diagonal().array() += QuadReal(ell);

  QuadMatrix M = QuadMatrix::Zero(2 * n, 2 * n);
  M.block(0, 0, n, n) = -transport;
  M.block(0, 0, n, n).diagonal().array() -= q1;
  M.block(0, n, n, n).setIdentity();
  M.block(n, 0, n, n) = 4 * z.asDiagonal() * Dzz + QuadReal(4 * ell + 6) * Dz;
  M.block(n, 0, n, n).diagonal().array() += kv;
  M.block(n, n, n, n) = -transport;
  M.block(n, n, n, n).diagonal().array() -= q2;
  return M;
}

std::vector<Complex> quad_eigenvalues(const QuadMatrix& Q) {
  Eigen::RealSchur<QuadMatrix> schur(Q, false);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("spectral: quad-precision Schur iteration failed");
  const QuadMatrix& T = schur.matrixT();
  const int n = static_cast<int>(T.rows());
  std::vector<Complex> vals;
  vals.reserve(n);
  int i = 0;
  while (i < n) {
    if (i + 1 < n && T(i + 1, i) != 0) {
      const QuadReal half = (T(i, i) + T(i + 1, i + 1)) / 2;
      const QuadReal gap = (T(i, i) - T(i + 1, i + 1)) / 2;
      const QuadReal disc = gap * gap + T(i, i + 1) * T(i + 1, i);
      if (disc >= 0) {
        const QuadReal s = sqrt(disc);
        vals.emplace_back(static_cast<double>(half + s), 0.0);
        vals.emplace_back(static_cast<double>(half - s), 0.0);
      } else {
        const double re = static_cast<double>(half);
        const double im = static_cast<double>(QuadReal(sqrt(-disc)));
        vals.emplace_back(re, im);
        vals.emplace_back(re, -im);
      }
      i += 2;
    } else {
      vals.emplace_back(static_cast<double>(T(i, i)), 0.0);
      ++i;
    }
  }
  // Defective (Jordan) pairs, such as the family collisions at integer
  // 2(p+1)/(p-1), split symmetrically under the Schur backward error:
  // lambda +- sqrt(kappa * delta). The cluster mean cancels the split and
  // is accurate to O(delta), so collapse near-coincident values onto it.
  // Genuine distinct eigenvalues of these operators never sit this close.
  constexpr double kClusterRadius = 1e-5;
  const int total = static_cast<int>(vals.size());
  std::vector<int> cluster(total, -1);
  int nclusters = 0;
  for (int seed = 0; seed < total; ++seed) {
    if (cluster[seed] >= 0) continue;
    cluster[seed] = nclusters;
    std::vector<int> stack{seed};
    while (!stack.empty()) {
      const int j = stack.back();
      stack.pop_back();
      for (int k = 0; k < total; ++k) {
        if (cluster[k] >= 0 || std::abs(vals[j] - vals[k]) > kClusterRadius) continue;
        cluster[k] = nclusters;
        stack.push_back(k);
      }
    }
    ++nclusters;
  }
  std::vector<Complex> mean(nclusters, Complex(0.0, 0.0));
  std::vector<int> members(nclusters, 0);
  for (int i = 0; i < total; ++i) {
    mean[cluster[i]] += vals[i];
    ++members[cluster[i]];
  }
  for (int i = 0; i < total; ++i)
    if (members[cluster[i]] > 1)
      vals[i] = mean[cluster[i]] / double(members[cluster[i]]);
  return vals;
}

// One-to-one replacement of the double-precision eigenvalues by the exact
// list, greedily by distance so every exact eigenvalue is represented once.
// (Nearest-neighbor snapping would let a badly conditioned eigenvalue park
// on an already claimed exact value and drop another from the list.)
void assign_values(std::vector<Eigenpair>& pairs, const std::vector<Complex>& vals) {
  if (pairs.size() != vals.size()) return;
  const int n = static_cast<int>(pairs.size());
  struct Edge {
    double d;
    int i, j;
  };
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      edges.push_back({std::abs(pairs[i].value - vals[j]), i, j});
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.d < b.d; });
  std::vector<char> pair_done(n, 0), val_done(n, 0);
  int left = n;
  for (const Edge& e : edges) {
    if (left == 0) break;
    if (pair_done[e.i] || val_done[e.j]) continue;
    pairs[e.i].value = vals[e.j];
    pair_done[e.i] = 1;
    val_done[e.j] = 1;
    --left;
  }
}

Decomposition decompose(const ModeOperator& op, bool want_left) {
  Eigen::MatrixXd B = op.mat;
  const Eigen::VectorXd d = balance_in_place(B);

  Decomposition out;
  Eigen::EigenSolver<Eigen::MatrixXd> es(B, true);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectral: eigendecomposition failed");
  const int n = static_cast<int>(B.rows());
  out.right.resize(n);
  for (int i = 0; i < n; ++i) {
    out.right[i].value = es.eigenvalues()[i];
    Eigen::VectorXcd v = d.cast<Complex>().asDiagonal() * es.eigenvectors().col(i);
    normalize_vector(v);
    out.right[i].vector = std::move(v);
  }

  if (want_left) {
    Eigen::EigenSolver<Eigen::MatrixXd> esl(B.transpose(), true);
    if (esl.info() != Eigen::Success)
      throw std::runtime_error("spectral: left eigendecomposition failed");
    out.left.resize(n);
    for (int i = 0; i < n; ++i) {
      out.left[i].value = esl.eigenvalues()[i];
      Eigen::VectorXcd w = d.cwiseInverse().cast<Complex>().asDiagonal() *
                           esl.eigenvectors().col(i);
      normalize_vector(w);
      out.left[i].vector = std::move(w);
    }
  }

  if (op.blocks() == 1 && n <= kQuadValueLimit) {
    const std::vector<Complex> vals =
        quad_eigenvalues(quad_mode_matrix(op.p, op.ells.front(), op.N));
    assign_values(out.right, vals);
    assign_values(out.left, vals);
  }

  auto byReal = [](const Eigenpair& a, const Eigenpair& b) {
    if (a.value.real() != b.value.real()) return a.value.real() > b.value.real();
    return a.value.imag() > b.value.imag();
  };
  std::sort(out.right.begin(), out.right.end(), byReal);
  std::sort(out.left.begin(), out.left.end(), byReal);
  return out;
}

RieszProjection projection_from(const Decomposition& dec, Complex center, double radius) {
  std::vector<int> ir, il;
  for (int i = 0; i < static_cast<int>(dec.right.size()); ++i)
    if (std::abs(dec.right[i].value - center) <= radius) ir.push_back(i);
  for (int i = 0; i < static_cast<int>(dec.left.size()); ++i)
    if (std::abs(dec.left[i].value - center) <= radius) il.push_back(i);

  RieszProjection proj;
  if (ir.empty() && il.empty()) return proj;
  if (ir.size() != il.size())
    throw std::runtime_error("spectral: right/left cluster sizes disagree");

  const int n = static_cast<int>(dec.right.front().vector.size());
  const int r = static_cast<int>(ir.size());
  Eigen::MatrixXcd V(n, r), W(n, r);
  Complex mean = 0.0;
  for (int j = 0; j < r; ++j) {
    V.col(j) = dec.right[ir[j]].vector;
    W.col(j) = dec.left[il[j]].vector;
    mean += dec.right[ir[j]].value;
  }
  mean /= static_cast<double>(r);

  // Transpose pairing: S = W^T V is invertible when the disk isolates the
  // cluster; left columns are renormalized so left^T range = I.
  const Eigen::MatrixXcd S = W.transpose() * V;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(S);
  if (!lu.isInvertible())
    throw std::runtime_error("spectral: defective eigenvector pairing in projection");
  proj.eigenvalue = mean;
  proj.range = V;
  proj.left = W * lu.inverse().transpose();
  return proj;
}

Eigen::VectorXcd real_matvec(const Eigen::MatrixXd& M, const Eigen::VectorXcd& x) {
  const Eigen::VectorXd re = M * x.real();
  const Eigen::VectorXd im = M * x.imag();
  return re + Complex(0.0, 1.0) * im;
}

}  // namespace

ModeOperator assemble_mode_operator(double p, int ell, int N) {
  check_order(N);
  if (ell < 0) throw std::invalid_argument("spectral: degree must be nonnegative");
  const Exponents e = exponents(p);

  ModeOperator op;
  op.p = p;
  op.N = N;
  op.m = 0;
  op.ells = {ell};
  const RadialGrid rg = chebyshev_lobatto_grid(N);
  op.z = rg.rho;
  op.rho = rg.rho.cwiseSqrt();
  const Eigen::MatrixXd& Dz = rg.D1;
  const Eigen::MatrixXd& Dzz = rg.D2;

  op.mat.setZero(op.size(), op.size());
  fill_diagonal_block(e, ell, op.z, Dz, Dzz, 0, op.mat);
  op.mat.block(N + 1, 0, N + 1, N + 1).diagonal().array() += e.kv;
  return op;
}

ModeOperator assemble_axisym_operator(double p, double a3, int N, int Lmax, int m) {
  check_order(N);
  if (std::abs(a3) > 0.3)
    throw std::invalid_argument("spectral: potential rapidity must satisfy |a3| <= 0.3");
  if (m < 0 || m > Lmax)
    throw std::invalid_argument("spectral: sector requires 0 <= m <= Lmax");
  const Exponents e = exponents(p);

  ModeOperator op;
  op.p = p;
  op.a3 = a3;
  op.N = N;
  op.m = m;
  for (int l = m; l <= Lmax; ++l) op.ells.push_back(l);
  const RadialGrid rg = chebyshev_lobatto_grid(N);
  op.z = rg.rho;
  op.rho = rg.rho.cwiseSqrt();
  const Eigen::MatrixXd& Dz = rg.D1;
  const Eigen::MatrixXd& Dzz = rg.D2;

  op.mat.setZero(op.size(), op.size());
  for (int b = 0; b < op.blocks(); ++b)
    fill_diagonal_block(e, op.ells[b], op.z, Dz, Dzz, b * op.block_size(), op.mat);

  // Potential coupling. With A0 = cosh(a3), beta = tanh(a3) the boosted
  // potential is kv/(A0 (1 - beta rho cos theta))^2, and its geometric
  // series gives, between degrees l (source) and lp (target),
  //   kv A0^{-2} sum_k (k+1) beta^k G_k(lp,l) rho^{k + l - lp},
  // an even polynomial in rho with nonnegative exponents.
  const double A0 = std::cosh(a3);
  const double beta = std::tanh(a3);
  int kmax = 0;
  if (beta != 0.0) {
    while (kmax < 200 && (kmax + 1) * std::pow(std::abs(beta), kmax) > 1e-17) ++kmax;
  }
  const std::vector<Eigen::MatrixXd> G = angular_moments(Lmax, m, kmax);
  const double scale = e.kv / (A0 * A0);

  const int n = N + 1;
  for (int bp = 0; bp < op.blocks(); ++bp) {
    const int lp = op.ells[bp];
    for (int b = 0; b < op.blocks(); ++b) {
      const int l = op.ells[b];
      for (int node = 0; node < n; ++node) {
        const double r = op.rho[node];
        double acc = 0.0;
        double bk = 1.0;  // beta^k
        for (int k = 0; k <= kmax; ++k) {
          const double g = G[k](lp, l);
          if (g != 0.0) acc += (k + 1) * bk * g * std::pow(r, k + l - lp);
          bk *= beta;
        }
        if (acc != 0.0)
          op.mat(op.index(bp, 1, node), op.index(b, 0, node)) += scale * acc;
      }
    }
  }
  return op;
}

std::vector<Eigenpair> eigenpairs(const ModeOperator& op) {
  return decompose(op, false).right;
}

std::vector<Eigenpair> left_eigenpairs(const ModeOperator& op) {
  return decompose(op, true).left;
}

SpectrumReport filter_spurious(const std::vector<Complex>& coarse,
                               const std::vector<Complex>& fine, double p,
                               double tol) {
  SpectrumReport rep;
  rep.p = p;
  for (const Complex& lam : coarse) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& mu : fine) best = std::min(best, std::abs(lam - mu));
    if (best <= tol)
      rep.stable.push_back(lam);
    else
      rep.discarded.push_back(lam);
  }
  auto byReal = [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  };
  std::sort(rep.stable.begin(), rep.stable.end(), byReal);
  std::sort(rep.discarded.begin(), rep.discarded.end(), byReal);

  double top = -std::numeric_limits<double>::infinity();
  for (const Complex& lam : rep.stable) {
    if (std::abs(lam - 1.0) <= 1e-3 || std::abs(lam) <= 1e-3) continue;
    top = std::max(top, lam.real());
  }
  rep.gap_margin = top + 1.5 / (p - 1.0);
  return rep;
}

Eigen::VectorXcd RieszProjection::apply(const Eigen::VectorXcd& x) const {
  if (rank() == 0) return Eigen::VectorXcd::Zero(x.size());
  return range * (left.transpose() * x);
}

Eigen::MatrixXcd RieszProjection::matrix() const {
  if (rank() == 0) return Eigen::MatrixXcd();
  return range * left.transpose();
}

RieszProjection riesz_projection(const ModeOperator& op, Complex center, double radius) {
  return projection_from(decompose(op, true), center, radius);
}

ProjectionSet riesz_projections(const ModeOperator& op) {
  const Decomposition dec = decompose(op, true);
  ProjectionSet ps;
  ps.P = projection_from(dec, Complex(1.0, 0.0), 0.1);
  ps.Q = projection_from(dec, Complex(0.0, 0.0), 0.1);
  return ps;
}

Eigen::VectorXcd apply_complement(const ProjectionSet& ps, const Eigen::VectorXcd& x) {
  return x - ps.P.apply(x) - ps.Q.apply(x);
}

Eigen::MatrixXcd contour_projection(const ModeOperator& op, Complex center,
                                    double radius, int nodes) {
  if (nodes < 4) throw std::invalid_argument("spectral: contour needs at least 4 nodes");
  const int n = op.size();
  const Eigen::MatrixXcd M = op.mat.cast<Complex>();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < nodes; ++j) {
    const double theta = 2.0 * M_PI * (j + 0.5) / nodes;
    const Complex w = std::polar(radius, theta);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu((center + w) * I - M);
    acc += w * lu.solve(I);
  }
  return acc / static_cast<double>(nodes);
}

Eigen::VectorXcd propagate(const ModeOperator& op, const Eigen::VectorXcd& x0,
                           double tau, double dtau) {
  if (tau < 0.0) throw std::invalid_argument("spectral: propagation time must be nonnegative");
  if (tau == 0.0) return x0;
  int lmax = 0;
  for (int l : op.ells) lmax = std::max(lmax, l);
  if (dtau <= 0.0) dtau = 0.25 / (static_cast<double>(op.N) * op.N + lmax * lmax + 1.0);
  const int steps = std::max(1, static_cast<int>(std::ceil(tau / dtau)));
  const double h = tau / steps;

  Eigen::VectorXcd x = x0;
  for (int s = 0; s < steps; ++s) {
    const Eigen::VectorXcd k1 = real_matvec(op.mat, x);
    const Eigen::VectorXcd k2 = real_matvec(op.mat, x + 0.5 * h * k1);
    const Eigen::VectorXcd k3 = real_matvec(op.mat, x + 0.5 * h * k2);
    const Eigen::VectorXcd k4 = real_matvec(op.mat, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

Eigen::VectorXcd block_to_radial(const ModeOperator& op, const Eigen::VectorXcd& vec,
                                 int block, int comp) {
  if (block < 0 || block >= op.blocks() || comp < 0 || comp > 1)
    throw std::invalid_argument("spectral: block or component out of range");
  const int ell = op.ells[block];
  Eigen::VectorXcd out(op.N + 1);
  for (int k = 0; k <= op.N; ++k)
    out[k] = std::pow(op.rho[k], ell) * vec[op.index(block, comp, k)];
  return out;
}

}  // namespace sswave
