#include "sswave/sphere_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sswave {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Normalized associated Legendre values Ybar_{l,m}(theta) (no Condon-Shortley
// sign) and their theta derivatives at a single angle, for all l <= Lmax at
// fixed m. Ybar is L2-normalized so that int |Ybar_{l,m}(theta)|^2 dcos = ...
// combined with the azimuthal factors below the full basis is orthonormal on
// the sphere.
void legendre_column(int Lmax, int m, double ct, double st,
                     std::vector<double>& val, std::vector<double>& dth) {
  val.assign(Lmax + 1, 0.0);
  dth.assign(Lmax + 1, 0.0);
  if (m > Lmax) return;

  double pmm = std::sqrt(1.0 / (4.0 * kPi));
  for (int k = 1; k <= m; ++k)
    pmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * st;
  val[m] = pmm;
  if (m + 1 <= Lmax) val[m + 1] = std::sqrt(2.0 * m + 3.0) * ct * pmm;
  for (int l = m + 2; l <= Lmax; ++l) {
    const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
    const double b = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 3.0) *
                               ((l - 1.0) * (l - 1.0) - double(m) * m) /
                               (double(l) * l - double(m) * m));
    val[l] = a * ct * val[l - 1] - b * val[l - 2];
  }

  // d/dtheta Ybar_{l,m} = (l ct Ybar_{l,m} - e_{l,m} Ybar_{l-1,m}) / st with
  // e_{l,m} = sqrt((2l+1)(l^2-m^2)/(2l-1)); valid away from the poles, which
  // Gauss-Legendre nodes never hit.
  for (int l = m; l <= Lmax; ++l) {
    const double e =
        l == 0 ? 0.0
               : std::sqrt((2.0 * l + 1.0) * (double(l) * l - double(m) * m) / (2.0 * l - 1.0));
    const double below = (l - 1 >= m && l >= 1) ? val[l - 1] : 0.0;
    dth[l] = (l * ct * val[l] - e * below) / st;
  }
}

}  // namespace

SphereBasis sphere_basis(const SphereQuadrature& quad, int Lmax) {
  if (Lmax > quad.L)
    throw std::invalid_argument("sphere_basis: Lmax exceeds quadrature order");

  SphereBasis b;
  b.Lmax = Lmax;
  const int S = quad.count();
  const int nidx = sh_count(Lmax);
  const int nphi = quad.azimuthal_count();
  b.Y.resize(S, nidx);
  b.Gx.resize(S, nidx);
  b.Gy.resize(S, nidx);
  b.Gz.resize(S, nidx);
  b.P0.resize(quad.polar_count(), Lmax + 1);

  const double rt2 = std::sqrt(2.0);
  std::vector<double> val, dth;
  for (int i = 0; i < quad.polar_count(); ++i) {
    const double theta = quad.theta[i];
    const double ct = quad.ctheta[i];
    const double st = std::sin(theta);
    for (int m = 0; m <= Lmax; ++m) {
      legendre_column(Lmax, m, ct, st, val, dth);
      if (m == 0)
        for (int l = 0; l <= Lmax; ++l) b.P0(i, l) = val[l];
      for (int j = 0; j < nphi; ++j) {
        const int s = i * nphi + j;
        const double phi = quad.phi[j];
        const double cp = std::cos(phi), sp = std::sin(phi);
        // unit tangent vectors at (theta, phi)
        const double eth[3] = {ct * cp, ct * sp, -st};
        const double eph[3] = {-sp, cp, 0.0};
        const double cmp = std::cos(m * phi), smp = std::sin(m * phi);
        for (int l = m; l <= Lmax; ++l) {
          if (m == 0) {
            const int idx = sh_index(l, 0);
            b.Y(s, idx) = val[l];
            b.Gx(s, idx) = eth[0] * dth[l];
            b.Gy(s, idx) = eth[1] * dth[l];
            b.Gz(s, idx) = eth[2] * dth[l];
          } else {
            const int ic = sh_index(l, m);   // cos branch
            const int is = sh_index(l, -m);  // sin branch
            b.Y(s, ic) = rt2 * val[l] * cmp;
            b.Y(s, is) = rt2 * val[l] * smp;
            const double dthc = rt2 * dth[l] * cmp;
            const double dths = rt2 * dth[l] * smp;
            // (1/sin theta) * d/dphi
            const double dphc = -rt2 * val[l] * m * smp / st;
            const double dphs = rt2 * val[l] * m * cmp / st;
            for (int d = 0; d < 3; ++d) {
              const double gc = eth[d] * dthc + eph[d] * dphc;
              const double gs = eth[d] * dths + eph[d] * dphs;
              (d == 0 ? b.Gx : d == 1 ? b.Gy : b.Gz)(s, ic) = gc;
              (d == 0 ? b.Gx : d == 1 ? b.Gy : b.Gz)(s, is) = gs;
            }
          }
        }
      }
    }
  }

  b.Yw = quad.weight.asDiagonal() * b.Y;
  return b;
}

HarmonicValue eval_harmonic(int l, int m, double theta, double phi) {
  const int am = std::abs(m);
  std::vector<double> val, dth;
  const double ct = std::cos(theta), st = std::sin(theta);
  legendre_column(l, am, ct, st, val, dth);
  HarmonicValue h{};
  if (m == 0) {
    h.y = val[l];
    h.dtheta = dth[l];
    h.dphi = 0.0;
    return h;
  }
  const double rt2 = std::sqrt(2.0);
  if (m > 0) {
    h.y = rt2 * val[l] * std::cos(m * phi);
    h.dtheta = rt2 * dth[l] * std::cos(m * phi);
    h.dphi = -rt2 * val[l] * m * std::sin(m * phi);
  } else {
    h.y = rt2 * val[l] * std::sin(am * phi);
    h.dtheta = rt2 * dth[l] * std::sin(am * phi);
    h.dphi = rt2 * val[l] * am * std::cos(am * phi);
  }
  return h;
}

}  // namespace sswave
