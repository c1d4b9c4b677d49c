#pragma once

// Special functions and the l(l+1) expansions of the two deformed spectra.
//
// The trigonometric spectrum expands through spherical Bessel functions:
//   E/A = 1/j0(tau)^2 * sum_n (-1)^n (2 tau)^n j_n(tau)/(n+1)! x^{n+1},
// with x = l(l+1).  The hyperbolic tensor-operator spectrum expands through
// the Taylor coefficients of tanh (Bernoulli numbers):
//   E/A = tau^2 cosh^2(tau)/sinh^2(tau) * sum_n (-1)^n (2 tau)^n f_n(tau)
//         /(n+1)! x^{n+1}.
// Small-tau limits of both reduce to rational coefficient tables.

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qrot/qnum.hpp"

namespace qrot {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

// Largest index kept in the internal exact tables.  The public bernoulli()
// cap is much lower; the slack feeds the inner sums of the hyperbolic
// expansion weights.
inline constexpr int kBernoulliInternalMax = 240;

inline const std::vector<Rational>& bernoulli_table() {
  static const std::vector<Rational> table = [] {
    std::vector<Rational> b(kBernoulliInternalMax + 1);
    b[0] = 1;
    for (int n = 1; n <= kBernoulliInternalMax; ++n) {
      // sum_{k=0}^{n} C(n+1,k) B_k = 0  with B_1 = -1/2
      Rational sum = 0;
      BigInt binom = 1;  // C(n+1, 0)
      for (int k = 0; k < n; ++k) {
        sum += Rational(binom) * b[k];
        binom = binom * (n + 1 - k) / (k + 1);
      }
      b[n] = -sum / (n + 1);
    }
    return b;
  }();
  return table;
}

inline BigInt factorial_big(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// T_m: coefficient of x^{2m-1} in tanh x = sum_{m>=1} T_m x^{2m-1},
//   T_m = 2^{2m} (2^{2m} - 1) B_{2m} / (2m)!.
inline Rational tanh_taylor_coefficient_exact(int m) {
  if (m < 1) throw std::domain_error("tanh coefficient needs m >= 1");
  if (2 * m > kBernoulliInternalMax)
    throw std::range_error("tanh coefficient index beyond internal table");
  const BigInt p = BigInt(1) << (2 * m);
  return Rational(p) * Rational(p - 1) * bernoulli_table()[2 * m] /
         Rational(factorial_big(2 * m));
}

// Double view of T_m, cached.
inline double tanh_coefficient(int m) {
  static const std::vector<double> cache = [] {
    std::vector<double> c(kBernoulliInternalMax / 2 + 1, 0.0);
    for (int m = 1; m < static_cast<int>(c.size()); ++m)
      c[m] = tanh_taylor_coefficient_exact(m).convert_to<double>();
    return c;
  }();
  if (m < 1 || m >= static_cast<int>(cache.size()))
    throw std::range_error("tanh coefficient index beyond internal table");
  return cache[m];
}

}  // namespace detail

// Exact Bernoulli number B_n (B_1 = -1/2).
inline const Rational& bernoulli(int n) {
  if (n < 0) throw std::domain_error("bernoulli: n must be nonnegative");
  if (n > 64) throw std::range_error("bernoulli: n > 64 not supported");
  return detail::bernoulli_table()[n];
}

// Exact coefficient of x^{2m-1} in the Taylor series of tanh x.
inline Rational tanh_taylor_coefficient(int m) {
  return detail::tanh_taylor_coefficient_exact(m);
}

// Spherical Bessel function of the first kind, n >= -1, x >= 0.
// j_{-1} = cos x/x, j_0 = sin x/x; higher orders by recurrence: downward
// (Miller) normalization against j_0 when x <= n, upward when x > n, and the
// small-argument form x^n/(2n+1)!! below x = 1e-4.
inline double spherical_bessel_j(int n, double x) {
  if (n < -1) throw std::domain_error("spherical_bessel_j: n >= -1 required");
  if (!(x >= 0.0)) throw std::domain_error("spherical_bessel_j: x >= 0 required");
  if (n == -1) {
    if (x == 0.0)
      throw std::domain_error("spherical_bessel_j: j_{-1} has a pole at 0");
    return std::cos(x) / x;
  }
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (n == 0) return std::sin(x) / x;

  if (x < 1e-4) {
    double v = 1.0;
    for (int k = 1; k <= n; ++k) v *= x / (2 * k + 1);
    return v;
  }
  if (x > n) {
    double jm = std::cos(x) / x, j0 = std::sin(x) / x;
    for (int k = 0; k < n; ++k) {
      const double jp = (2 * k + 1) / x * j0 - jm;
      jm = j0;
      j0 = jp;
    }
    return j0;
  }
  // downward recurrence with rescaling, normalized by j_0
  const int start = n + 25 + static_cast<int>(x);
  double fp = 0.0, fc = 1e-300, fn_val = 0.0;
  for (int k = start; k >= 0; --k) {
    const double fm = (2 * k + 3) / x * fc - fp;
    fp = fc;
    fc = fm;
    if (k == n) fn_val = fc;
    if (std::abs(fc) > 1e250) {
      fc *= 1e-250;
      fp *= 1e-250;
      fn_val *= 1e-250;
    }
  }
  return fn_val * (std::sin(x) / x) / fc;
}

enum class ExpansionModel { Suq2Exact, Suq2Approx, ItoExact, ItoApprox };

// Coefficient table of a spectrum expansion: E = A * prefactor *
// sum_n coeffs[n] (l(l+1))^{n+1}.
struct ExpansionCoefficients {
  ExpansionModel model = ExpansionModel::Suq2Exact;
  double tau = 0.0;
  std::vector<double> coeffs;
  double prefactor = 1.0;
};

namespace detail {

inline void check_expansion_args(double tau, int n_terms, const char* what) {
  if (!(tau > 0.0) || !(tau <= 0.5))
    throw std::domain_error(std::string(what) + ": tau must be in (0, 0.5]");
  if (n_terms < 1 || n_terms > 64)
    throw std::domain_error(std::string(what) +
                            ": n_terms must be in [1, 64]");
}

// Inner sum of the hyperbolic expansion weight:
//   S_n(tau) = sum_k T_{n+k+2} (2n+2k+3) C(n+k+1, n+1) tau^{2k},
// truncated when the terms stop mattering.
inline double ito_weight_inner_sum(int n, double tau) {
  double sum = 0.0, tau2k = 1.0, binom = 1.0;
  const double tau2 = tau * tau;
  for (int k = 0;; ++k) {
    const int m = n + k + 2;
    if (2 * m > kBernoulliInternalMax)
      throw std::range_error(
          "hyperbolic expansion weight did not converge within the internal "
          "coefficient table");
    const double term = tanh_coefficient(m) * (2 * n + 2 * k + 3) * binom *
                        tau2k;
    sum += term;
    if (k >= 2 && std::abs(term) <= 1e-17 * std::abs(sum)) break;
    tau2k *= tau2;
    binom *= static_cast<double>(n + k + 2) / (k + 1);  // C(n+k+2, n+1)
  }
  return sum;
}

}  // namespace detail

// Reduced weight f_n of the hyperbolic expansion: the series coefficient is
// (-1)^n (2 tau)^n f_n/(n+1)!, with f_0 = sinh(tau)/(tau cosh^3 tau).
inline double ito_expansion_weight(int n, double tau) {
  if (n < 0) throw std::domain_error("ito_expansion_weight: n >= 0 required");
  if (!(tau > 0.0))
    throw std::domain_error("ito_expansion_weight: tau > 0 required");
  double fact = 1.0, pw = 1.0;
  for (int k = 2; k <= n + 1; ++k) fact *= k;
  for (int k = 0; k < n; ++k) pw *= 2.0 * tau;
  const double sign = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
  return sign * pw * fact * detail::ito_weight_inner_sum(n, tau);
}

// Trigonometric spectrum expansion through spherical Bessel functions.
inline ExpansionCoefficients suq2_exact_expansion(double tau, int n_terms) {
  detail::check_expansion_args(tau, n_terms, "suq2_exact_expansion");
  ExpansionCoefficients c;
  c.model = ExpansionModel::Suq2Exact;
  c.tau = tau;
  const double j0 = spherical_bessel_j(0, tau);
  c.prefactor = 1.0 / (j0 * j0);
  c.coeffs.resize(n_terms);
  double fact = 1.0, pw = 1.0;  // (n+1)!, (2 tau)^n
  for (int n = 0; n < n_terms; ++n) {
    fact *= n + 1;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    c.coeffs[n] = sign * pw * spherical_bessel_j(n, tau) / fact;
    pw *= 2.0 * tau;
  }
  return c;
}

// Exact small-tau limit coefficient of the trigonometric expansion:
// (-1)^n 2^{2n} / ((n+1) (2n+1)!), multiplying tau^{2n} (l(l+1))^{n+1}.
inline Rational suq2_approx_coefficient(int n) {
  if (n < 0) throw std::domain_error("suq2_approx_coefficient: n >= 0");
  Rational r = Rational(BigInt(1) << (2 * n)) /
               (Rational(n + 1) * Rational(detail::factorial_big(2 * n + 1)));
  return (n % 2 == 0) ? r : -r;
}

inline ExpansionCoefficients suq2_approx_expansion(double tau, int n_terms) {
  detail::check_expansion_args(tau, n_terms, "suq2_approx_expansion");
  ExpansionCoefficients c;
  c.model = ExpansionModel::Suq2Approx;
  c.tau = tau;
  c.prefactor = 1.0;
  c.coeffs.resize(n_terms);
  double t2n = 1.0;
  for (int n = 0; n < n_terms; ++n) {
    c.coeffs[n] = suq2_approx_coefficient(n).convert_to<double>() * t2n;
    t2n *= tau * tau;
  }
  return c;
}

// Hyperbolic tensor-operator spectrum expansion.
inline ExpansionCoefficients ito_exact_expansion(double tau, int n_terms) {
  detail::check_expansion_args(tau, n_terms, "ito_exact_expansion");
  ExpansionCoefficients c;
  c.model = ExpansionModel::ItoExact;
  c.tau = tau;
  const double ch = std::cosh(tau), sh = std::sinh(tau);
  c.prefactor = tau * tau * ch * ch / (sh * sh);
  c.coeffs.resize(n_terms);
  double pw = 1.0;  // (2 tau)^{2n}
  for (int n = 0; n < n_terms; ++n) {
    // (-1)^n (2 tau)^n f_n/(n+1)! collapses to -(2 tau)^{2n} S_n(tau)
    c.coeffs[n] = -pw * detail::ito_weight_inner_sum(n, tau);
    pw *= 4.0 * tau * tau;
  }
  return c;
}

// Exact small-tau limit coefficient of the hyperbolic expansion:
// 2^{2n+4} (1 - 2^{2n+4}) B_{2n+4} / ((2n+2)! (2n+4)), multiplying
// (2 tau)^{2n} (l(l+1))^{n+1}.
inline Rational ito_approx_coefficient(int n) {
  if (n < 0) throw std::domain_error("ito_approx_coefficient: n >= 0");
  return -detail::tanh_taylor_coefficient_exact(n + 2) * (2 * n + 3);
}

inline ExpansionCoefficients ito_approx_expansion(double tau, int n_terms) {
  detail::check_expansion_args(tau, n_terms, "ito_approx_expansion");
  ExpansionCoefficients c;
  c.model = ExpansionModel::ItoApprox;
  c.tau = tau;
  c.prefactor = 1.0;
  c.coeffs.resize(n_terms);
  double pw = 1.0;
  for (int n = 0; n < n_terms; ++n) {
    c.coeffs[n] = ito_approx_coefficient(n).convert_to<double>() * pw;
    pw *= 4.0 * tau * tau;
  }
  return c;
}

// E(l) = A * prefactor * sum_n coeffs[n] (l(l+1))^{n+1}, stopping once terms
// fall below 1e-15 of the partial sum.  The hyperbolic series converges only
// inside its validity radius, enforced as (2l+1) * 2 tau < pi/2.
inline double evaluate_expansion(const ExpansionCoefficients& c, double A,
                                 int ell) {
  if (ell < 0) throw std::domain_error("evaluate_expansion: ell >= 0");
  if (c.model == ExpansionModel::ItoExact &&
      !((2 * ell + 1) * 2.0 * c.tau < std::numbers::pi / 2.0))
    throw std::range_error(
        "evaluate_expansion: (2l+1)*2tau exceeds the validity radius of the "
        "hyperbolic expansion");
  const double x = static_cast<double>(ell) * (ell + 1);
  double sum = 0.0, xp = x;
  for (double coeff : c.coeffs) {
    const double term = coeff * xp;
    sum += term;
    if (std::abs(term) < 1e-15 * std::abs(sum)) break;
    xp *= x;
  }
  return A * c.prefactor * sum;
}

// Closed approximate spectrum A sin^2(tau sqrt(l(l+1)))/tau^2.
inline double sinus_formula(double A, double tau, int ell) {
  if (!(tau > 0.0)) throw std::domain_error("sinus_formula: tau > 0 required");
  if (ell < 0) throw std::domain_error("sinus_formula: ell >= 0");
  const double s = std::sin(tau * std::sqrt(static_cast<double>(ell) * (ell + 1)));
  return A * s * s / (tau * tau);
}

// Equivalent parametrization E = epsilon0 sin^2((pi/N) sqrt(l(l+1))).
struct AmalskyForm {
  double epsilon0;  // A / tau^2
  double n_param;   // pi / tau
};

inline AmalskyForm amalsky_parameters(double A, double tau) {
  if (!(tau > 0.0))
    throw std::domain_error("amalsky_parameters: tau > 0 required");
  return {A / (tau * tau), std::numbers::pi / tau};
}

inline double amalsky_energy(double epsilon0, double n_param, int ell) {
  if (!(n_param > 0.0))
    throw std::domain_error("amalsky_energy: N > 0 required");
  return epsilon0 * std::pow(std::sin(std::numbers::pi / n_param *
                                      std::sqrt(static_cast<double>(ell) *
                                                (ell + 1))),
                             2);
}

// Closed approximate spectrum A/(2 tau)^2 tanh^2(2 tau sqrt(l(l+1))).
inline double tanh_formula(double A, double tau, int ell) {
  if (!(tau > 0.0)) throw std::domain_error("tanh_formula: tau > 0 required");
  if (ell < 0) throw std::domain_error("tanh_formula: ell >= 0");
  const double t = std::tanh(2.0 * tau *
                             std::sqrt(static_cast<double>(ell) * (ell + 1)));
  return A / (4.0 * tau * tau) * t * t;
}

}  // namespace qrot
