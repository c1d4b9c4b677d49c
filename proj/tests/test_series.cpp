#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "qrot/series.hpp"
#include "qrot/spectra.hpp"

using namespace qrot;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Bernoulli numbers are exact rationals") {
  CHECK(bernoulli(0) == Rational(1));
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(2) == Rational(1, 6));
  CHECK(bernoulli(4) == Rational(-1, 30));
  CHECK(bernoulli(6) == Rational(1, 42));
  CHECK(bernoulli(8) == Rational(-1, 30));
  CHECK(bernoulli(10) == Rational(5, 66));
  for (int n = 3; n <= 63; n += 2) CHECK(bernoulli(n) == Rational(0));
  CHECK(bernoulli(12) == Rational(-691, 2730));
  CHECK_THROWS_AS(bernoulli(65), std::range_error);
  CHECK_THROWS_AS(bernoulli(-1), std::domain_error);
}

TEST_CASE("Bernoulli recurrence sums to zero exactly") {
  for (int n = 1; n <= 64; ++n) {
    Rational sum = 0;
    BigInt binom = 1;
    for (int k = 0; k <= n; ++k) {
      sum += Rational(binom) * bernoulli(k);
      binom = binom * (n + 1 - k) / (k + 1);
    }
    CHECK(sum == Rational(0));
  }
}

TEST_CASE("tanh Taylor coefficients") {
  CHECK(tanh_taylor_coefficient(1) == Rational(1));
  CHECK(tanh_taylor_coefficient(2) == Rational(-1, 3));
  CHECK(tanh_taylor_coefficient(3) == Rational(2, 15));
  // partial sums at x = 0.5 reach tanh(0.5) well before 20 terms
  const double x = 0.5;
  double sum = 0.0;
  for (int m = 1; m <= 20; ++m)
    sum += tanh_taylor_coefficient(m).convert_to<double>() *
           std::pow(x, 2 * m - 1);
  CHECK_THAT(sum, WithinAbs(std::tanh(0.5), 1e-12));
}

TEST_CASE("factorial identity 2^n (n+1)! (2n+1)!! = (n+1) (2n+1)!") {
  for (int n = 0; n <= 15; ++n) {
    BigInt lhs = BigInt(1) << n;
    BigInt f = 1;
    for (int k = 2; k <= n + 1; ++k) f *= k;
    lhs *= f;
    BigInt dfac = 1;
    for (int k = 1; k <= 2 * n + 1; k += 2) dfac *= k;
    lhs *= dfac;
    BigInt rhs = n + 1;
    BigInt f2 = 1;
    for (int k = 2; k <= 2 * n + 1; ++k) f2 *= k;
    rhs *= f2;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("spherical Bessel function values") {
  CHECK(spherical_bessel_j(0, 0.0) == 1.0);
  CHECK(spherical_bessel_j(3, 0.0) == 0.0);
  CHECK(std::abs(spherical_bessel_j(0, std::numbers::pi)) < 1e-15);
  CHECK_THAT(spherical_bessel_j(-1, 2.0), WithinRel(std::cos(2.0) / 2.0, 1e-15));
  CHECK_THAT(spherical_bessel_j(2, 0.1),
             WithinRel(6.6619060844556871e-4, 1e-12));
  CHECK_THAT(spherical_bessel_j(5, 2.0),
             WithinRel(2.6351697702441174e-3, 1e-12));
  CHECK_THAT(spherical_bessel_j(3, 0.5),
             WithinRel(1.1740354438675573e-3, 1e-12));
  CHECK_THAT(spherical_bessel_j(10, 0.3),
             WithinRel(4.2862929705600981e-16, 1e-11));
  // small-argument form below the switch threshold
  CHECK_THAT(spherical_bessel_j(2, 1e-5), WithinRel(1e-10 / 15.0, 1e-8));
  CHECK_THROWS_AS(spherical_bessel_j(-1, 0.0), std::domain_error);
  CHECK_THROWS_AS(spherical_bessel_j(-2, 1.0), std::domain_error);
  CHECK_THROWS_AS(spherical_bessel_j(1, -0.5), std::domain_error);
}

TEST_CASE("spherical Bessel generating function") {
  const double x = 0.3, t = 0.1;
  const double lhs = std::cos(std::sqrt(x * x - 2 * x * t)) / x;
  double rhs = 0.0, fact = 1.0;
  for (int n = 0; n < 25; ++n) {
    if (n) fact *= n;
    rhs += spherical_bessel_j(n - 1, x) * std::pow(t, n) / fact;
  }
  CHECK_THAT(rhs, WithinAbs(lhs, 1e-10));
}

TEST_CASE("trigonometric expansion reproduces the closed spectrum") {
  const double tau = 0.01742, A = 20.553;
  const auto c = suq2_exact_expansion(tau, 40);
  CHECK(c.model == ExpansionModel::Suq2Exact);
  CHECK(c.coeffs.size() == 40);
  for (int ell = 0; ell <= 18; ++ell) {
    const double closed =
        ell == 0 ? 0.0 : energy(ModelKind::I, DeformedParams{A, tau}, ell);
    CHECK_THAT(evaluate_expansion(c, A, ell), WithinAbs(closed, 1e-8 * A));
  }
  CHECK(evaluate_expansion(c, A, 0) == 0.0);
  CHECK_THAT(evaluate_expansion(c, A, 18),
             WithinAbs(6789.6387770413058, 1e-5));
}

TEST_CASE("trigonometric expansion coefficients approach the rational "
          "small-tau limits") {
  CHECK(suq2_approx_coefficient(0) == Rational(1));
  CHECK(suq2_approx_coefficient(1) == Rational(-1, 3));
  CHECK(suq2_approx_coefficient(2) == Rational(2, 45));
  CHECK(suq2_approx_coefficient(3) == Rational(-1, 315));
  const double tau = 1e-4;
  const auto approx = suq2_approx_expansion(tau, 6);
  CHECK(approx.prefactor == 1.0);
  for (int n = 0; n <= 3; ++n) {
    const double rational =
        suq2_approx_coefficient(n).convert_to<double>();
    CHECK_THAT(approx.coeffs[n] / std::pow(tau, 2 * n),
               WithinRel(rational, 1e-14));
    // the exact coefficients converge to the same rationals as tau -> 0
    const auto exact = suq2_exact_expansion(tau, 6);
    CHECK_THAT(exact.prefactor * exact.coeffs[n] / std::pow(tau, 2 * n),
               WithinRel(rational, 1e-6));
  }
}

TEST_CASE("sinus formula") {
  CHECK(sinus_formula(20.554, 0.01742, 0) == 0.0);
  CHECK_THAT(sinus_formula(20.554, 0.01742, 2),
             WithinRel(123.24917125370999, 1e-12));
  CHECK_THAT(sinus_formula(20.554, 0.01742, 12),
             WithinRel(3156.1457682196083, 1e-12));
  const auto am = amalsky_parameters(20.554, 0.01742);
  CHECK_THAT(am.epsilon0, WithinRel(67732.959331225178, 1e-12));
  CHECK_THAT(am.n_param, WithinRel(180.34400996497091, 1e-12));
  for (int ell : {1, 2, 7, 12})
    CHECK_THAT(amalsky_energy(am.epsilon0, am.n_param, ell),
               WithinRel(sinus_formula(20.554, 0.01742, ell), 1e-12));
}

TEST_CASE("hyperbolic expansion weight") {
  CHECK_THAT(ito_expansion_weight(0, 0.1),
             WithinRel(0.98677921754532571, 1e-12));
  for (double tau : {0.05, 0.2, 0.3, 0.5}) {
    const double closed =
        std::sinh(tau) / (tau * std::pow(std::cosh(tau), 3));
    CHECK_THAT(ito_expansion_weight(0, tau), WithinRel(closed, 1e-12));
  }
}

TEST_CASE("hyperbolic expansion weight obeys the derivative ladder") {
  // f_1 = -f_0', f_2 = f_0'' - f_0'/tau; differentiate the closed form of
  // f_0 numerically as an independent route
  const double tau = 0.2, h = 1e-5;
  auto f0 = [](double t) {
    return std::sinh(t) / (t * std::pow(std::cosh(t), 3));
  };
  const double d1 = (f0(tau + h) - f0(tau - h)) / (2 * h);
  const double d2 = (f0(tau + h) - 2 * f0(tau) + f0(tau - h)) / (h * h);
  CHECK_THAT(ito_expansion_weight(1, tau), WithinRel(-d1, 1e-7));
  CHECK_THAT(ito_expansion_weight(2, tau), WithinRel(d2 - d1 / tau, 1e-5));
}

TEST_CASE("hyperbolic expansion reproduces the closed spectrum") {
  const double tau = 0.00623, A = 20.559;
  const auto c = ito_exact_expansion(tau, 40);
  CHECK(c.coeffs.size() == 40);
  for (int ell = 0; ell <= 18; ++ell) {
    const double closed =
        ell == 0 ? 0.0 : energy(ModelKind::II, DeformedParams{A, tau}, ell);
    CHECK_THAT(evaluate_expansion(c, A, ell), WithinAbs(closed, 1e-8 * A));
  }
  CHECK(evaluate_expansion(c, A, 0) == 0.0);
  CHECK_THAT(evaluate_expansion(c, A, 18),
             WithinAbs(6789.4070361907831, 1e-5));
}

TEST_CASE("hyperbolic expansion validity radius") {
  const auto c = ito_exact_expansion(0.3, 10);
  CHECK_NOTHROW(evaluate_expansion(c, 1.0, 0));
  CHECK_THROWS_AS(evaluate_expansion(c, 1.0, 1), std::range_error);
  const auto c2 = ito_exact_expansion(0.1, 10);
  CHECK_NOTHROW(evaluate_expansion(c2, 1.0, 3));
  CHECK_THROWS_AS(evaluate_expansion(c2, 1.0, 4), std::range_error);
  CHECK_THROWS_AS(ito_exact_expansion(0.6, 10), std::domain_error);
  CHECK_THROWS_AS(ito_exact_expansion(0.1, 65), std::domain_error);
  CHECK_THROWS_AS(ito_exact_expansion(0.0, 10), std::domain_error);
}

TEST_CASE("hyperbolic expansion coefficients approach the rational "
          "small-tau limits") {
  CHECK(ito_approx_coefficient(0) == Rational(1));
  CHECK(ito_approx_coefficient(1) == Rational(-2, 3));
  CHECK(ito_approx_coefficient(2) == Rational(17, 45));
  CHECK(ito_approx_coefficient(3) == Rational(-62, 315));
  const double tau = 1e-4;
  const auto approx = ito_approx_expansion(tau, 6);
  const auto exact = ito_exact_expansion(tau, 6);
  for (int n = 0; n <= 3; ++n) {
    const double rational = ito_approx_coefficient(n).convert_to<double>();
    CHECK_THAT(approx.coeffs[n] / std::pow(2 * tau, 2 * n),
               WithinRel(rational, 1e-14));
    CHECK_THAT(exact.prefactor * exact.coeffs[n] / std::pow(2 * tau, 2 * n),
               WithinRel(rational, 1e-6));
  }
}

TEST_CASE("sech-squared series from the tanh coefficients") {
  for (double tau : {0.05, 0.1, 0.2, 0.3}) {
    double sum = 0.0;
    for (int n = 0; n < 30; ++n)
      sum += (2 * n + 1) *
             tanh_taylor_coefficient(n + 1).convert_to<double>() *
             std::pow(tau, 2 * n);
    CHECK_THAT(sum, WithinAbs(1.0 / std::pow(std::cosh(tau), 2), 1e-12));
  }
}

TEST_CASE("hyperbolic tangent formula") {
  CHECK(tanh_formula(20.559, 0.00623, 0) == 0.0);
  CHECK_THAT(tanh_formula(20.559, 0.00623, 2),
             WithinRel(123.27743679255842, 1e-12));
  CHECK_THAT(tanh_formula(20.559, 0.00623, 12),
             WithinRel(3156.1217858067932, 1e-12));
}

TEST_CASE("gap between the closed spectrum and the tangent approximation") {
  // At the reference parameters the two agree to a couple of tenths of a
  // wavenumber over the band; the largest gap sits at the highest level.
  const double tau = 0.00623, A = 20.559;
  double worst = 0.0;
  for (int ell = 0; ell <= 18; ++ell) {
    const double closed =
        ell == 0 ? 0.0 : energy(ModelKind::II, DeformedParams{A, tau}, ell);
    worst = std::max(worst, std::abs(closed - tanh_formula(A, tau, ell)));
  }
  CHECK_THAT(worst, WithinAbs(0.17234645977624, 1e-6));
  CHECK(worst <= 0.2);
}
