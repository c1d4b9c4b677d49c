#pragma once

// Deformed-number arithmetic for the quantum algebra su_q(2).
//
// The deformation parameter is either real, q = exp(tau), giving hyperbolic
// q-numbers [x] = sinh(tau x)/sinh(tau), or a phase, q = exp(i tau), giving
// trigonometric q-numbers [x] = sin(tau x)/sin(tau).  The classical limit
// q -> 1 has [x] = x exactly.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qrot {

enum class Regime { Classical, Real, Phase };

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Classical: return "classical";
    case Regime::Real: return "real";
    case Regime::Phase: return "phase";
  }
  return "?";
}

namespace detail {

// sinh(tau x)/sinh(tau); valid for any nonzero tau, including negative
// (the ratio is even in tau, which realizes the q <-> 1/q symmetry).
inline double q_number_real_raw(double x, double tau) {
  return std::sinh(tau * x) / std::sinh(tau);
}

inline double q_number_phase_raw(double x, double tau) {
  return std::sin(tau * x) / std::sin(tau);
}

}  // namespace detail

// Carrier for the regime and tau.  The phase regime guards against q being
// (numerically) a root of unity over the irreps the caller declares: the
// constructor rejects tau with n*tau = 0 mod 2pi for any n <= 4*ell_max + 4.
class DeformationParameter {
 public:
  static constexpr int kDefaultEllMax = 64;
  static constexpr double kRootOfUnityTol = 1e-9;

  static DeformationParameter classical() {
    return DeformationParameter(Regime::Classical, 0.0, 0);
  }

  static DeformationParameter real(double tau) {
    if (!(tau > 0.0) || !std::isfinite(tau))
      throw std::domain_error(
          "real deformation requires tau > 0 (use classical() for tau = 0)");
    return DeformationParameter(Regime::Real, tau, 0);
  }

  static DeformationParameter phase(double tau, int ell_max = kDefaultEllMax) {
    if (!(tau > 0.0) || !(tau < std::numbers::pi) || !std::isfinite(tau))
      throw std::domain_error("phase deformation requires tau in (0, pi)");
    if (ell_max < 0) throw std::domain_error("ell_max must be nonnegative");
    DeformationParameter p(Regime::Phase, tau, ell_max);
    p.check_root_of_unity(4 * ell_max + 4);
    return p;
  }

  Regime regime() const { return regime_; }
  double tau() const { return tau_; }
  bool is_classical() const { return regime_ == Regime::Classical; }

  // Largest declared ell covered by the construction-time guard (phase only).
  int guard_ell_max() const { return guard_ell_max_; }

  // Re-run the root-of-unity guard for an irrep of dimension two_ell + 1.
  void check_irrep(int two_ell) const {
    if (regime_ == Regime::Phase) check_root_of_unity(2 * two_ell + 4);
  }

 private:
  DeformationParameter(Regime r, double tau, int ell_max)
      : regime_(r), tau_(tau), guard_ell_max_(ell_max) {}

  void check_root_of_unity(int n_max) const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int n = 1; n <= n_max; ++n) {
      const double r = std::remainder(n * tau_, two_pi);
      if (std::abs(r) < kRootOfUnityTol)
        throw std::domain_error("phase deformation tau = " +
                                std::to_string(tau_) +
                                " is a root of unity at n = " +
                                std::to_string(n));
    }
  }

  Regime regime_;
  double tau_;
  int guard_ell_max_;
};

// q-number [x]: sinh(tau x)/sinh(tau), sin(tau x)/sin(tau), or x.
inline double q_number(double x, const DeformationParameter& p) {
  if (!std::isfinite(x)) throw std::domain_error("q_number: x must be finite");
  switch (p.regime()) {
    case Regime::Classical: return x;
    case Regime::Real: return detail::q_number_real_raw(x, p.tau());
    case Regime::Phase: return detail::q_number_phase_raw(x, p.tau());
  }
  return x;
}

// q-factorial [n]! = [n][n-1]...[1]; the empty product is 1.
inline double q_factorial(int n, const DeformationParameter& p) {
  if (n < 0) throw std::domain_error("q_factorial: n must be nonnegative");
  double acc = 1.0;
  for (int k = 2; k <= n; ++k) acc *= q_number(static_cast<double>(k), p);
  return acc;
}

// q-number in base q^2: [x]_{q^2} = (q^{2x} - q^{-2x})/(q^2 - q^{-2}),
// i.e. the ordinary q-number with tau doubled.
inline double q_number_base_q2(double x, const DeformationParameter& p) {
  if (!std::isfinite(x))
    throw std::domain_error("q_number_base_q2: x must be finite");
  switch (p.regime()) {
    case Regime::Classical: return x;
    case Regime::Real: return detail::q_number_real_raw(x, 2.0 * p.tau());
    case Regime::Phase: return detail::q_number_phase_raw(x, 2.0 * p.tau());
  }
  return x;
}

}  // namespace qrot
