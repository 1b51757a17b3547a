#include "sswave/hypergeom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

// Keep the quadruple-precision gamma instantiation on the software float
// path; the __float128 interop would add a libquadmath link dependency.
#define BOOST_MATH_DISABLE_FLOAT128
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sswave/geometry.hpp"

namespace sswave {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool near_real_integer(Complex z, double tol, long* out) {
  if (std::abs(z.imag()) > tol) return false;
  const double r = std::round(z.real());
  if (std::abs(z.real() - r) > tol) return false;
  *out = static_cast<long>(r);
  return true;
}

bool is_nonpositive_integer(Complex z, long* n) {
  long m;
  if (!near_real_integer(z, 1e-12, &m) || m > 0) return false;
  *n = -m;
  return true;
}

// Direct power series; exact for terminating numerator parameters.
Complex series_sum(Complex a, Complex b, Complex c, double z, int max_terms) {
  Complex sum = 1.0, term = 1.0;
  int small_count = 0;
  for (int k = 0; k < max_terms; ++k) {
    const Complex denom = (c + static_cast<double>(k)) * static_cast<double>(k + 1);
    if (std::abs(denom) == 0.0) {
      throw std::invalid_argument("gauss_2f1: lower-parameter pole hit in series");
    }
    term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) / denom * z;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small_count >= 2) break;
    } else {
      small_count = 0;
    }
  }
  return sum;
}

// Logarithmic connection limit, gamma = alpha + beta + m with integer m >= 0.
Complex log_branch_upper(Complex a, Complex b, long m, double w) {
  const Complex gamma_c = a + b + static_cast<double>(m);
  const double logw = std::log(w);
  Complex finite = 0.0;
  if (m >= 1) {
    Complex coef = std::exp(log_gamma(Complex(static_cast<double>(m)))) *
                   reciprocal_gamma(a + static_cast<double>(m)) *
                   reciprocal_gamma(b + static_cast<double>(m));
    Complex poch = 1.0;  // (a)_k (b)_k / (k! (1-m)_k) w^k
    for (long k = 0; k < m; ++k) {
      finite += poch;
      const Complex denom =
          static_cast<double>(k + 1) * (Complex(1.0 - static_cast<double>(m)) + static_cast<double>(k));
      poch *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) / denom * w;
    }
    finite *= coef;
  }

  const Complex coef2 = (m % 2 == 0 ? 1.0 : -1.0) * reciprocal_gamma(a) * reciprocal_gamma(b);
  Complex term = std::pow(w, static_cast<double>(m));
  for (long i = 1; i <= m; ++i) term /= static_cast<double>(i);
  Complex psi1 = digamma(Complex(1.0));
  Complex psi2 = digamma(Complex(static_cast<double>(m) + 1.0));
  Complex psia = digamma(a + static_cast<double>(m));
  Complex psib = digamma(b + static_cast<double>(m));
  Complex series = 0.0;
  int small_count = 0;
  for (int k = 0; k < 4000; ++k) {
    const Complex bracket = logw - psi1 - psi2 + psia + psib;
    const Complex contrib = term * bracket;
    series += contrib;
    if (std::abs(contrib) <= 1e-17 * std::abs(series) + 1e-300) {
      if (++small_count >= 2) break;
    } else {
      small_count = 0;
    }
    const double kk = static_cast<double>(k);
    term *= (a + static_cast<double>(m) + kk) * (b + static_cast<double>(m) + kk) /
            ((kk + 1.0) * (kk + static_cast<double>(m) + 1.0)) * w;
    psi1 += 1.0 / (kk + 1.0);
    psi2 += 1.0 / (kk + static_cast<double>(m) + 1.0);
    psia += 1.0 / (a + static_cast<double>(m) + kk);
    psib += 1.0 / (b + static_cast<double>(m) + kk);
  }
  return std::exp(log_gamma(gamma_c)) * (finite - coef2 * series);
}

// Logarithmic connection limit, gamma = alpha + beta - m with integer m >= 1.
Complex log_branch_lower(Complex a, Complex b, long m, double w) {
  const Complex gamma_c = a + b - static_cast<double>(m);
  const double logw = std::log(w);

  Complex coef1 = std::exp(log_gamma(Complex(static_cast<double>(m)))) * reciprocal_gamma(a) *
                  reciprocal_gamma(b) * std::pow(w, -static_cast<double>(m));
  Complex finite = 0.0;
  Complex poch = 1.0;  // (a-m)_k (b-m)_k / (k! (1-m)_k) w^k
  for (long k = 0; k < m; ++k) {
    finite += poch;
    const Complex denom =
        static_cast<double>(k + 1) * (Complex(1.0 - static_cast<double>(m)) + static_cast<double>(k));
    poch *= (a - static_cast<double>(m) + static_cast<double>(k)) *
            (b - static_cast<double>(m) + static_cast<double>(k)) / denom * w;
  }
  finite *= coef1;

  const Complex coef2 = (m % 2 == 0 ? 1.0 : -1.0) * reciprocal_gamma(a - static_cast<double>(m)) *
                        reciprocal_gamma(b - static_cast<double>(m));
  Complex series = 0.0;
  if (std::abs(coef2) > 0.0) {
    Complex term = 1.0;
    for (long i = 1; i <= m; ++i) term /= static_cast<double>(i);
    Complex psi1 = digamma(Complex(1.0));
    Complex psi2 = digamma(Complex(static_cast<double>(m) + 1.0));
    Complex psia = digamma(a);
    Complex psib = digamma(b);
    int small_count = 0;
    for (int k = 0; k < 4000; ++k) {
      const Complex bracket = logw - psi1 - psi2 + psia + psib;
      const Complex contrib = term * bracket;
      series += contrib;
      if (std::abs(contrib) <= 1e-17 * std::abs(series) + 1e-300) {
        if (++small_count >= 2) break;
      } else {
        small_count = 0;
      }
      const double kk = static_cast<double>(k);
      term *= (a + kk) * (b + kk) / ((kk + 1.0) * (kk + static_cast<double>(m) + 1.0)) * w;
      psi1 += 1.0 / (kk + 1.0);
      psi2 += 1.0 / (kk + static_cast<double>(m) + 1.0);
      psia += 1.0 / (a + kk);
      psib += 1.0 / (b + kk);
    }
  }
  return std::exp(log_gamma(gamma_c)) * (finite - coef2 * series);
}

using QuadReal = boost::multiprecision::cpp_bin_float_quad;

// Generic two-term connection for real parameters, carried out in quadruple
// precision. When gamma - alpha - beta sits within kNearIntegerBand of an
// integer the two terms grow like 1/dist and cancel; double intermediates
// lose up to 14 digits there, quadruple ones keep the difference accurate
// down to dist = 1e-12, where the exact logarithmic limit takes over.
Complex connection_eval_quad(double a, double b, double c, double w) {
  const QuadReal qa = a, qb = b, qc = c, qw = w;
  const QuadReal d = qc - qa - qb;

  const auto f21 = [&](QuadReal aa, QuadReal bb, QuadReal cc) {
    QuadReal sum = 1, term = 1;
    int small_count = 0;
    for (int k = 0; k < 20000; ++k) {
      term *= (aa + k) * (bb + k) / ((cc + k) * (k + 1)) * qw;
      sum += term;
      if (abs(term) <= QuadReal(1e-36) * abs(sum)) {
        if (++small_count >= 2) break;
      } else {
        small_count = 0;
      }
    }
    return sum;
  };

  using boost::math::tgamma;
  long n;
  QuadReal coef_a = 0, coef_b = 0;
  if (!is_nonpositive_integer(Complex(c - a, 0.0), &n) &&
      !is_nonpositive_integer(Complex(c - b, 0.0), &n))
    coef_a = tgamma(qc) * tgamma(d) / (tgamma(qc - qa) * tgamma(qc - qb));
  if (!is_nonpositive_integer(Complex(a, 0.0), &n) &&
      !is_nonpositive_integer(Complex(b, 0.0), &n))
    coef_b = tgamma(qc) * tgamma(-d) / (tgamma(qa) * tgamma(qb));

  QuadReal val = coef_a * f21(qa, qb, 1 - d);
  if (coef_b != 0) val += coef_b * exp(d * log(qw)) * f21(qc - qa, qc - qb, 1 + d);
  return Complex(static_cast<double>(val), 0.0);
}

// Evaluation through the z -> 1-z connection; w = 1-z in (0, 1/2].
Complex connection_eval(const HypergeomParams& par, double w) {
  const Complex d = par.gamma - par.alpha - par.beta;
  const bool real_params =
      par.alpha.imag() == 0.0 && par.beta.imag() == 0.0 && par.gamma.imag() == 0.0;
  constexpr double kNearIntegerBand = 0.05;
  long m;
  if (near_real_integer(d, real_params ? 1e-12 : 1e-6, &m)) {
    if (m >= 0) return log_branch_upper(par.alpha, par.beta, m, w);
    return log_branch_lower(par.alpha, par.beta, -m, w);
  }
  if (real_params && near_real_integer(d, kNearIntegerBand, &m))
    return connection_eval_quad(par.alpha.real(), par.beta.real(), par.gamma.real(), w);
  const Complex coef_a = std::exp(log_gamma(par.gamma) + log_gamma(d)) *
                         reciprocal_gamma(par.gamma - par.alpha) *
                         reciprocal_gamma(par.gamma - par.beta);
  const Complex coef_b = std::exp(log_gamma(par.gamma) + log_gamma(-d)) *
                         reciprocal_gamma(par.alpha) * reciprocal_gamma(par.beta);
  const Complex f_a = series_sum(par.alpha, par.beta, 1.0 - d, w, 4000);
  const Complex f_b = series_sum(par.gamma - par.alpha, par.gamma - par.beta, 1.0 + d, w, 4000);
  return coef_a * f_a + coef_b * std::exp(d * std::log(Complex(w))) * f_b;
}

// Stable dispatch given both x and 1-x (callers compute whichever is tiny
// without cancellation).
Complex eval_2f1_stable(const HypergeomParams& par, double x, double one_minus_x) {
  long n;
  if (is_nonpositive_integer(par.alpha, &n) || is_nonpositive_integer(par.beta, &n)) {
    long na = 0, nb = 0;
    const bool ta = is_nonpositive_integer(par.alpha, &na);
    const bool tb = is_nonpositive_integer(par.beta, &nb);
    const long nterm = ta && tb ? std::min(na, nb) : (ta ? na : nb);
    return series_sum(par.alpha, par.beta, par.gamma, x, static_cast<int>(nterm) + 2);
  }
  if (x <= 0.5) return series_sum(par.alpha, par.beta, par.gamma, x, 4000);
  return connection_eval(par, one_minus_x);
}

void validate_params(const HypergeomParams& par) {
  long n, na, nb;
  const bool ta = is_nonpositive_integer(par.alpha, &na);
  const bool tb = is_nonpositive_integer(par.beta, &nb);
  if (near_real_integer(par.gamma, 1e-9, &n) && n <= 0) {
    const long pole = -n;
    if (ta || tb) {
      const long nterm = ta && tb ? std::min(na, nb) : (ta ? na : nb);
      if (nterm <= pole) return;  // series terminates before the pole
    }
    throw std::invalid_argument("gauss_2f1: gamma is a nonpositive integer");
  }
}

SolutionPair solution_pair_from(const HypergeomParams& par) {
  SolutionPair sp;
  sp.phi0 = [par](double z) { return gauss_2f1(par, z); };
  sp.dphi0 = [par](double z) { return gauss_2f1_derivative(par, z); };
  const Complex cprime = par.alpha + par.beta + 1.0 - par.gamma;
  long m;
  if (!(near_real_integer(cprime, 1e-9, &m) && m <= 0)) {
    const HypergeomParams q{par.alpha, par.beta, cprime};
    sp.phi1 = [q](double z) { return gauss_2f1(q, 1.0 - z); };
    sp.dphi1 = [q](double z) { return -gauss_2f1_derivative(q, 1.0 - z); };
  } else {
    // The z=1 exponent pair is {0, e} with e = gamma-alpha-beta a positive
    // integer here; take the solution with the nonzero exponent.
    const HypergeomParams q{par.gamma - par.alpha, par.gamma - par.beta,
                            par.gamma - par.alpha - par.beta + 1.0};
    const Complex e = par.gamma - par.alpha - par.beta;
    sp.phi1 = [q, e](double z) {
      const double w = 1.0 - z;
      return std::exp(e * std::log(Complex(w))) * gauss_2f1(q, w);
    };
    sp.dphi1 = [q, e](double z) {
      const double w = 1.0 - z;
      return -(e * std::exp((e - 1.0) * std::log(Complex(w))) * gauss_2f1(q, w) +
               std::exp(e * std::log(Complex(w))) * gauss_2f1_derivative(q, w));
    };
  }
  return sp;
}

}  // namespace

Complex log_gamma(Complex z) {
  static const double kLanczos[9] = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  long n;
  if (is_nonpositive_integer(z, &n)) throw std::domain_error("log_gamma: pole");
  if (z.real() < 0.5) {
    return std::log(Complex(kPi)) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  const Complex zz = z - 1.0;
  Complex x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (zz + static_cast<double>(i));
  const Complex t = zz + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (zz + 0.5) * std::log(t) - t + std::log(x);
}

Complex reciprocal_gamma(Complex z) {
  long n;
  if (is_nonpositive_integer(z, &n)) return 0.0;
  return std::exp(-log_gamma(z));
}

Complex digamma(Complex z) {
  long n;
  if (is_nonpositive_integer(z, &n)) throw std::domain_error("digamma: pole");
  if (z.real() < 0.5) {
    return digamma(1.0 - z) - kPi / std::tan(kPi * z);
  }
  Complex acc = 0.0;
  while (z.real() < 12.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  // psi(z) ~ ln z - 1/(2z) - sum B_{2n}/(2n) z^{-2n}
  static const double kBern[7] = {1.0 / 12.0,  -1.0 / 120.0,     1.0 / 252.0, -1.0 / 240.0,
                                  1.0 / 132.0, -691.0 / 32760.0, 1.0 / 12.0};
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex s = std::log(z) - 0.5 * inv;
  Complex t = inv2;
  for (double bn : kBern) {
    s -= bn * t;
    t *= inv2;
  }
  return acc + s;
}

Complex gauss_2f1(const HypergeomParams& par, double z) {
  if (!(z >= 0.0 && z < 1.0)) {
    throw std::invalid_argument("gauss_2f1: argument must lie in [0,1)");
  }
  validate_params(par);
  return eval_2f1_stable(par, z, 1.0 - z);
}

Complex gauss_2f1_series(const HypergeomParams& par, double z, int max_terms) {
  if (!(z >= 0.0 && z < 1.0)) {
    throw std::invalid_argument("gauss_2f1_series: argument must lie in [0,1)");
  }
  validate_params(par);
  return series_sum(par.alpha, par.beta, par.gamma, z, max_terms);
}

Complex gauss_2f1_derivative(const HypergeomParams& par, double z) {
  const HypergeomParams up{par.alpha + 1.0, par.beta + 1.0, par.gamma + 1.0};
  return par.alpha * par.beta / par.gamma * gauss_2f1(up, z);
}

HypergeomParams eigen_params(const ModeODE& mode) {
  if (mode.ell < 0) throw std::invalid_argument("eigen_params: ell must be >= 0");
  if (mode.p <= 1.0) throw std::invalid_argument("eigen_params: requires p > 1");
  const double l = static_cast<double>(mode.ell);
  HypergeomParams par;
  par.alpha = 0.5 * mode.lambda - 0.5 + 0.5 * l;
  par.beta = 0.5 * mode.lambda + (mode.p + 1.0) / (mode.p - 1.0) + 0.5 * l;
  par.gamma = 1.5 + l;
  return par;
}

HypergeomParams resolvent_params(int ell) {
  if (ell < 0) throw std::invalid_argument("resolvent_params: ell must be >= 0");
  const double l = static_cast<double>(ell);
  return HypergeomParams{Complex((3.0 + 2.0 * l) / 4.0), Complex((5.0 + 2.0 * l) / 4.0),
                         Complex((3.0 + 2.0 * l) / 2.0)};
}

SolutionPair eigensolution_pair(const ModeODE& mode) {
  return solution_pair_from(eigen_params(mode));
}

SolutionPair resolvent_solution_pair(int ell) {
  return solution_pair_from(resolvent_params(ell));
}

std::vector<double> analytic_point_spectrum(int ell, double p, double half_plane_bound) {
  if (ell < 0) throw std::invalid_argument("analytic_point_spectrum: ell must be >= 0");
  if (p <= 1.0) throw std::invalid_argument("analytic_point_spectrum: requires p > 1");
  std::vector<double> out;
  for (double lam = 1.0 - ell;; lam -= 2.0) {
    if (lam < half_plane_bound) break;
    out.push_back(lam);
  }
  for (double lam = -2.0 * (p + 1.0) / (p - 1.0) - ell;; lam -= 2.0) {
    if (lam < half_plane_bound) break;
    out.push_back(lam);
  }
  std::sort(out.begin(), out.end(), std::greater<double>());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-9; }),
            out.end());
  return out;
}

double resolvent_wronskian(int ell, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw std::invalid_argument("resolvent_wronskian: rho must lie in (0,1)");
  }
  return -std::pow(2.0, 0.5 + static_cast<double>(ell)) /
         (rho * rho * std::pow(1.0 - rho * rho, 1.5));
}

namespace {

struct GaussRule {
  Eigen::VectorXd x, w;
};

const GaussRule& gauss16() {
  static const GaussRule rule = [] {
    GaussRule r;
    gauss_legendre(16, r.x, r.w);
    return r;
  }();
  return rule;
}

double gl_panel(const std::function<double(double)>& f, double a, double b) {
  const GaussRule& r = gauss16();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < r.x.size(); ++i) acc += r.w[i] * f(mid + half * r.x[i]);
  return acc * half;
}

double adaptive_panel(const std::function<double(double)>& f, double a, double b, int depth) {
  const double whole = gl_panel(f, a, b);
  const double mid = 0.5 * (a + b);
  const double split = gl_panel(f, a, mid) + gl_panel(f, mid, b);
  const double err = std::abs(whole - split);
  if (err <= 1e-13 * (std::abs(split) + 1e-30) || b - a < 1e-12) return split;
  if (depth >= 24) {
    if (err > 1e-6 * (std::abs(split) + 1.0)) {
      throw std::runtime_error("resolvent_mode_solve: quadrature failed to refine");
    }
    return split;
  }
  return adaptive_panel(f, a, mid, depth + 1) + adaptive_panel(f, mid, b, depth + 1);
}

// Integral of f over [lo, hi] in s; panels reaching past 0.9 are computed in
// the substituted variable s = 1 - sigma^2 which removes the sqrt(1-s)
// endpoint behavior.
double integrate_panel(const std::function<double(double)>& f, double lo, double hi) {
  if (hi <= lo) return 0.0;
  if (hi < 0.9) return adaptive_panel(f, lo, hi, 0);
  auto fsub = [&f](double sigma) { return 2.0 * sigma * f(1.0 - sigma * sigma); };
  const double sa = std::sqrt(std::max(0.0, 1.0 - hi));
  const double sb = std::sqrt(1.0 - lo);
  return adaptive_panel(fsub, sa, sb, 0);
}

}  // namespace

Eigen::VectorXd resolvent_mode_solve(int ell, const std::function<double(double)>& g,
                                     const Eigen::VectorXd& rho_out) {
  if (ell < 0) throw std::invalid_argument("resolvent_mode_solve: ell must be >= 0");
  for (int i = 0; i < rho_out.size(); ++i) {
    if (!(rho_out[i] >= 0.0 && rho_out[i] <= 1.0)) {
      throw std::invalid_argument("resolvent_mode_solve: radii must lie in [0,1]");
    }
  }
  const HypergeomParams par0 = resolvent_params(ell);
  const HypergeomParams par1{par0.alpha, par0.beta, Complex(1.5)};
  const double l = static_cast<double>(ell);

  // psi0(s) = s^l phi0(s^2) regular at 0; psi1(s) = s^l phi1(1-s^2) regular
  // at 1. Both 2F1 arguments computed cancellation-free.
  auto psi0 = [&par0, l](double s) {
    const double z = s * s, w = (1.0 - s) * (1.0 + s);
    return std::pow(s, l) * eval_2f1_stable(par0, z, w).real();
  };
  auto psi1 = [&par1, l](double s) {
    const double z = s * s, w = (1.0 - s) * (1.0 + s);
    return std::pow(s, l) * eval_2f1_stable(par1, w, z).real();
  };
  auto weight = [](double s) { return s * s * std::sqrt(std::max(0.0, (1.0 - s) * (1.0 + s))); };
  auto integrand0 = [&](double s) { return psi0(s) * g(s) * weight(s); };
  auto integrand1 = [&](double s) { return psi1(s) * g(s) * weight(s); };

  // Breakpoints: output radii plus fill-in so panels stay short.
  std::vector<double> bp(rho_out.data(), rho_out.data() + rho_out.size());
  bp.push_back(0.0);
  bp.push_back(1.0);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double x, double y) { return std::abs(x - y) < 1e-15; }),
           bp.end());
  std::vector<double> fine;
  for (size_t i = 0; i + 1 < bp.size(); ++i) {
    fine.push_back(bp[i]);
    const double width = bp[i + 1] - bp[i];
    const int splits = static_cast<int>(std::ceil(width / 0.06));
    for (int s = 1; s < splits; ++s) fine.push_back(bp[i] + width * s / splits);
  }
  fine.push_back(bp.back());

  const size_t np = fine.size() - 1;
  std::vector<double> prefix(fine.size(), 0.0), suffix(fine.size(), 0.0);
  for (size_t i = 0; i < np; ++i) {
    prefix[i + 1] = prefix[i] + integrate_panel(integrand0, fine[i], fine[i + 1]);
  }
  // For ell >= 1 the 1-regular solution is singular like s^{-l-1} at the
  // origin; its integral is only ever multiplied by psi0 = O(s^l), and the
  // value at s = 0 is never consumed (u(0) = 0 there), so the first panel is
  // skipped to keep the quadrature finite.
  const size_t first_suffix = (ell >= 1) ? 1 : 0;
  for (size_t i = np; i-- > first_suffix;) {
    suffix[i] = suffix[i + 1] + integrate_panel(integrand1, fine[i], fine[i + 1]);
  }

  const double scale = std::pow(2.0, -0.5 - l);
  Eigen::VectorXd out(rho_out.size());
  for (int i = 0; i < rho_out.size(); ++i) {
    const double rho = rho_out[i];
    const auto it = std::lower_bound(fine.begin(), fine.end(), rho - 1e-14);
    const size_t idx = static_cast<size_t>(it - fine.begin());
    if (rho < 1e-14) {
      out[i] = (ell >= 1) ? 0.0 : scale * suffix[0];
    } else if (rho > 1.0 - 1e-14) {
      out[i] = scale * prefix.back();  // psi1(1) = 1, boundary limit term vanishes
    } else {
      out[i] = scale * (psi1(rho) * prefix[idx] + psi0(rho) * suffix[idx]);
    }
  }
  return out;
}

}  // namespace sswave
