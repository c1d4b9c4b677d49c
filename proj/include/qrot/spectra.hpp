#pragma once

// Closed-form level energies E(l) in cm^-1 for the six two-parameter
// rotational models, all referenced to E(0) = 0:
//
//   I    A sin(l tau) sin((l+1) tau)/sin^2 tau     (trigonometric q-rotor)
//   I'   A sin^2(tau sqrt(l(l+1)))/tau^2           (sinus formula)
//   II   A/(4 sinh^2 tau) (1 - cosh^2 tau/cosh^2((2l+1) tau))
//   II'  A/(2 tau)^2 tanh^2(2 tau sqrt(l(l+1)))    (hyperbolic tangent)
//   III  A l(l+1) + B (l(l+1))^2                   (rotational expansion)
//   IV   a (sqrt(1 + b l(l+1)) - 1)                (Holmberg-Lipas)

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qrot {

enum class ModelKind { I, Iprime, II, IIprime, III, IV };

inline std::string model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::I: return "I";
    case ModelKind::Iprime: return "Ip";
    case ModelKind::II: return "II";
    case ModelKind::IIprime: return "IIp";
    case ModelKind::III: return "III";
    case ModelKind::IV: return "IV";
  }
  return "?";
}

inline ModelKind parse_model_kind(std::string_view s) {
  if (s == "I") return ModelKind::I;
  if (s == "Ip" || s == "I'") return ModelKind::Iprime;
  if (s == "II") return ModelKind::II;
  if (s == "IIp" || s == "II'") return ModelKind::IIprime;
  if (s == "III") return ModelKind::III;
  if (s == "IV") return ModelKind::IV;
  throw std::domain_error("unknown model '" + std::string(s) +
                          "' (expected I, Ip, II, IIp, III, IV)");
}

// Parameters of the deformed models I, I', II, II'.
struct DeformedParams {
  double A = 0.0;    // cm^-1
  double tau = 0.0;  // dimensionless
};

// Parameters of model III.  Only the first two terms of the rotational
// expansion are used; C and D are carried for documentation and stay zero.
struct RotorExpansionParams {
  double A = 0.0;  // cm^-1
  double B = 0.0;  // cm^-1, signed
  double C = 0.0;  // fixed 0, out of scope
  double D = 0.0;  // fixed 0, out of scope
};

// Parameters of model IV.
struct HolmbergLipasParams {
  double a = 0.0;  // cm^-1
  double b = 0.0;  // dimensionless
};

using ModelParams =
    std::variant<DeformedParams, RotorExpansionParams, HolmbergLipasParams>;

inline bool is_deformed(ModelKind k) {
  return k == ModelKind::I || k == ModelKind::Iprime || k == ModelKind::II ||
         k == ModelKind::IIprime;
}

namespace detail {

inline const DeformedParams& deformed_params(ModelKind k,
                                             const ModelParams& p) {
  const auto* d = std::get_if<DeformedParams>(&p);
  if (!d)
    throw std::domain_error("model " + model_kind_name(k) +
                            " takes parameters (A, tau)");
  if (!(d->A > 0.0) || !(d->tau > 0.0))
    throw std::domain_error("model " + model_kind_name(k) +
                            " requires A > 0 and tau > 0");
  return *d;
}

}  // namespace detail

inline double energy(ModelKind kind, const ModelParams& params, int ell) {
  if (ell < 0) throw std::domain_error("energy: ell must be nonnegative");
  const double x = static_cast<double>(ell) * (ell + 1);
  switch (kind) {
    case ModelKind::I: {
      const auto& p = detail::deformed_params(kind, params);
      const double s = std::sin(p.tau);
      return p.A * std::sin(ell * p.tau) * std::sin((ell + 1) * p.tau) /
             (s * s);
    }
    case ModelKind::Iprime: {
      const auto& p = detail::deformed_params(kind, params);
      const double s = std::sin(p.tau * std::sqrt(x));
      return p.A * s * s / (p.tau * p.tau);
    }
    case ModelKind::II: {
      const auto& p = detail::deformed_params(kind, params);
      const double sh = std::sinh(p.tau);
      const double r = std::cosh(p.tau) / std::cosh((2 * ell + 1) * p.tau);
      return p.A / (4.0 * sh * sh) * (1.0 - r * r);
    }
    case ModelKind::IIprime: {
      const auto& p = detail::deformed_params(kind, params);
      const double t = std::tanh(2.0 * p.tau * std::sqrt(x));
      return p.A / (4.0 * p.tau * p.tau) * t * t;
    }
    case ModelKind::III: {
      const auto* p = std::get_if<RotorExpansionParams>(&params);
      if (!p) throw std::domain_error("model III takes parameters (A, B)");
      if (!(p->A > 0.0)) throw std::domain_error("model III requires A > 0");
      return p->A * x + p->B * x * x;
    }
    case ModelKind::IV: {
      const auto* p = std::get_if<HolmbergLipasParams>(&params);
      if (!p) throw std::domain_error("model IV takes parameters (a, b)");
      if (!(p->a > 0.0)) throw std::domain_error("model IV requires a > 0");
      const double arg = 1.0 + p->b * x;
      if (arg < 0.0)
        throw std::domain_error(
            "model IV: 1 + b l(l+1) is negative at ell = " +
            std::to_string(ell));
      return p->a * (std::sqrt(arg) - 1.0);
    }
  }
  throw std::domain_error("energy: unknown model kind");
}

inline std::vector<std::pair<int, double>> spectrum_table(
    ModelKind kind, const ModelParams& params, const std::vector<int>& ells) {
  for (std::size_t i = 1; i < ells.size(); ++i)
    if (ells[i] <= ells[i - 1])
      throw std::domain_error("spectrum_table: ells must be sorted ascending");
  std::vector<std::pair<int, double>> out;
  out.reserve(ells.size());
  for (int ell : ells) out.emplace_back(ell, energy(kind, params, ell));
  return out;
}

}  // namespace qrot
