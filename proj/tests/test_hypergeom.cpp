#include <doctest.h>

#include <cmath>
#include <complex>

#include "sswave/hypergeom.hpp"

using namespace sswave;

TEST_SUITE("hypergeom") {

TEST_CASE("gamma machinery") {
  CHECK(std::exp(log_gamma(Complex(0.5, 0.0))).real() ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(std::exp(log_gamma(Complex(5.0, 0.0))).real() == doctest::Approx(24.0).epsilon(1e-13));
  CHECK(std::abs(reciprocal_gamma(Complex(-3.0, 0.0))) == doctest::Approx(0.0).scale(1.0));
  CHECK(std::abs(reciprocal_gamma(Complex(2.0, 0.0)) - 1.0) < 1e-13);
  // digamma(1) = -EulerGamma; digamma(1/2) = -EulerGamma - 2 log 2.
  const double euler = 0.5772156649015328606;
  CHECK(digamma(Complex(1.0, 0.0)).real() == doctest::Approx(-euler).epsilon(1e-12));
  CHECK(digamma(Complex(0.5, 0.0)).real() ==
        doctest::Approx(-euler - 2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("closed-form hypergeometric values") {
  // 2F1(1,1;2;z) = -log(1-z)/z on both sides of the series/connection split.
  for (const double z : {0.25, 0.5, 0.75, 0.9}) {
    const Complex v = gauss_2f1({1.0, 1.0, 2.0}, z);
    CHECK(v.real() == doctest::Approx(-std::log1p(-z) / z).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-13);
  }
  // Binomial case 2F1(a,b;b;z) = (1-z)^{-a}.
  const Complex b = gauss_2f1({0.75, 2.25, 2.25}, 0.6);
  CHECK(b.real() == doctest::Approx(std::pow(0.4, -0.75)).epsilon(1e-12));
  // arcsin: 2F1(1/2,1/2;3/2;z^2) = asin(z)/z.
  const Complex s = gauss_2f1({0.5, 0.5, 1.5}, 0.64);
  CHECK(s.real() == doctest::Approx(std::asin(0.8) / 0.8).epsilon(1e-12));
}

TEST_CASE("logarithmic connection cases") {
  // gamma - alpha - beta = 0 (log branch): 2F1(1,1;2;z) already covers the
  // integer-difference path through d = 0; d = 1 via 2F1(0.5,0.5;2;z).
  const HypergeomParams par{0.5, 0.5, 2.0};
  for (const double z : {0.6, 0.85}) {
    const Complex direct = gauss_2f1_series(par, z);
    const Complex conn = gauss_2f1(par, z);
    CHECK(std::abs(direct - conn) < 1e-12 * (1.0 + std::abs(direct)));
  }
}

TEST_CASE("series and connection agree off the special cases") {
  const HypergeomParams par{-1.3, 2.7, 1.9};
  for (const double z : {0.55, 0.7, 0.9}) {
    const Complex a = gauss_2f1_series(par, z);
    const Complex b = gauss_2f1(par, z);
    CHECK(std::abs(a - b) < 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("derivative identity") {
  const HypergeomParams par{0.8, 1.4, 2.2};
  const double z = 0.3, h = 1e-6;
  const Complex fd = (gauss_2f1(par, z + h) - gauss_2f1(par, z - h)) / (2.0 * h);
  CHECK(std::abs(gauss_2f1_derivative(par, z) - fd) < 1e-8);
}

TEST_CASE("eigen and resolvent parameters") {
  const ModeODE mode{2, Complex(-1.0, 0.0), 5.0};
  const HypergeomParams par = eigen_params(mode);
  CHECK(par.alpha.real() == doctest::Approx((-1.0 - 1.0 + 2.0) / 2.0));
  CHECK(par.beta.real() == doctest::Approx(-0.5 + 1.5 + 1.0));
  CHECK(par.gamma.real() == doctest::Approx(1.5 + 2.0));
  const HypergeomParams rp = resolvent_params(3);
  CHECK(rp.alpha.real() == doctest::Approx(9.0 / 4.0));
  CHECK(rp.beta.real() == doctest::Approx(11.0 / 4.0));
  CHECK(rp.gamma.real() == doctest::Approx(4.5));
}

TEST_CASE("analytic point spectrum") {
  const auto spec = analytic_point_spectrum(0, 5.0, -6.0);
  // Scaling family 1 - 2n and the second family -3 - 2n, merged and sorted.
  const double expect[] = {1.0, -1.0, -3.0, -5.0};
  REQUIRE(spec.size() >= 4);
  for (int i = 0; i < 4; ++i) CHECK(spec[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  for (std::size_t i = 0; i + 1 < spec.size(); ++i) CHECK(spec[i] > spec[i + 1]);
}

TEST_CASE("resolvent wronskian closed form") {
  for (const int ell : {0, 2}) {
    const double rho = 0.62;
    const double w = resolvent_wronskian(ell, rho);
    const double exact = -std::pow(2.0, 0.5 + ell) /
                         (rho * rho * std::pow(1.0 - rho * rho, 1.5));
    CHECK(w == doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("resolvent solver handles a manufactured forcing") {
  // u = rho^2 (1 - rho^2/2) solves the ell = 2 problem for the forcing
  // produced by the closed-form operator image (computed via the z-form).
  const int ell = 2;
  const auto g = [&](double rho) {
    const double z = rho * rho;
    const double q = 1.0 - 0.5 * z;
    const double dq = -0.5;
    const double img = (4.0 * ell + 12.0) * z * dq - (4.0 * ell + 6.0) * dq +
                       (ell * ell + 4.0 * ell + 3.75) * q;
    return std::pow(rho, ell) * img;
  };
  Eigen::VectorXd rho_out(5);
  rho_out << 0.0, 0.2, 0.5, 0.8, 1.0;
  const Eigen::VectorXd u = resolvent_mode_solve(ell, g, rho_out);
  for (int k = 0; k < rho_out.size(); ++k) {
    const double z = rho_out[k] * rho_out[k];
    CHECK(u[k] == doctest::Approx(z * (1.0 - 0.5 * z)).epsilon(1e-9).scale(1.0));
  }
  CHECK(std::abs(u[0]) < 1e-10);
}

}  // TEST_SUITE
