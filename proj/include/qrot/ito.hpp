#pragma once

// Rank-1 irreducible tensor operator under su_q(2), the deformed
// Clebsch-Gordan coefficients coupling 1 x 1 -> 1, deformed tensor and
// scalar products, the scalar Z operator, and the rotational Hamiltonian
// A (1 - Z^-2)/(q - q^-1)^2 built from them.
//
// Everything here is restricted to real q = exp(tau) (or the classical
// limit); the phase regime is rejected.

#include <map>
#include <string>

#include "qrot/algebra.hpp"
#include "qrot/matrix.hpp"
#include "qrot/qnum.hpp"

namespace qrot {

namespace detail {

inline void require_real_or_classical(const DeformationParameter& p,
                                      const char* what) {
  if (p.regime() == Regime::Phase)
    throw std::domain_error(std::string(what) +
                            ": phase regime is not supported, use real q");
}

// sqrt([2]/[4]); even in tau, so it is shared by the q and 1/q families.
inline double cg_norm(double tau) {
  return tau == 0.0 ? std::sqrt(0.5)
                    : std::sqrt(std::sinh(2.0 * tau) / std::sinh(4.0 * tau));
}

// <1 m1 1 m2 | 1 m>_q with q = exp(tau); tau < 0 gives the 1/q family.
inline double qcg_1x1_to_1_raw(int m1, int m2, int m, double tau) {
  if (m1 + m2 != m) return 0.0;
  const double s = cg_norm(tau);
  const double q = std::exp(tau);
  if (m1 == 1 && m2 == 0) return q * s;
  if (m1 == 0 && m2 == 1) return -s / q;
  if (m1 == 0 && m2 == -1) return q * s;
  if (m1 == -1 && m2 == 0) return -s / q;
  if (m1 == 1 && m2 == -1) return s;
  if (m1 == -1 && m2 == 1) return -s;
  if (m1 == 0 && m2 == 0) return (q - 1.0 / q) * s;
  return 0.0;
}

inline void require_projection(int m, const char* what) {
  if (m < -1 || m > 1)
    throw std::domain_error(std::string(what) +
                            ": projection must be in {-1, 0, 1}");
}

}  // namespace detail

// Deformed Clebsch-Gordan coefficient <1 m1 1 m2 | 1 m>_q.
inline double qcg_1x1_to_1(int m1, int m2, int m,
                           const DeformationParameter& p) {
  detail::require_real_or_classical(p, "qcg_1x1_to_1");
  detail::require_projection(m1, "qcg_1x1_to_1");
  detail::require_projection(m2, "qcg_1x1_to_1");
  detail::require_projection(m, "qcg_1x1_to_1");
  return detail::qcg_1x1_to_1_raw(m1, m2, m, p.tau());
}

struct QcgEntry {
  int j1, m1, j2, m2, j, m;
  double value;
};

// The seven nonzero couplings of 1 x 1 -> 1.
inline std::vector<QcgEntry> qcg_table_1x1_to_1(
    const DeformationParameter& p) {
  detail::require_real_or_classical(p, "qcg_table_1x1_to_1");
  std::vector<QcgEntry> table;
  for (int m1 = 1; m1 >= -1; --m1)
    for (int m2 = 1; m2 >= -1; --m2) {
      const int m = m1 + m2;
      if (m < -1 || m > 1) continue;
      const double v = detail::qcg_1x1_to_1_raw(m1, m2, m, p.tau());
      if (v != 0.0) table.push_back({1, m1, 1, m2, 1, m, v});
    }
  return table;
}

// Components J_{+1}, J_{-1}, J_0 of the rank-1 tensor built from the
// su_q(2) generators on one irrep block.
struct ItoTriple {
  OperatorMatrix plus;   // J_{+1}
  OperatorMatrix minus;  // J_{-1}
  OperatorMatrix zero;   // J_0
  DeformationParameter param = DeformationParameter::classical();
  SpinLabel ell{0};
};

// J_{+1} = -q^{-L0} L+ / sqrt([2]),  J_{-1} = +q^{-L0} L- / sqrt([2]),
// J_0 = (q L+ L- - q^-1 L- L+)/[2].
inline ItoTriple build_ito(SpinLabel ell, const DeformationParameter& p) {
  detail::require_real_or_classical(p, "build_ito");
  const GeneratorTriple g = suq2_generators(ell, p);
  const double tau = p.tau();
  const double q = std::exp(tau);
  const double two_q = q_number(2.0, p);
  const OperatorMatrix q_pow = diagonal_map(
      g.zero, [tau](double m) { return std::exp(-tau * m); });  // q^{-L0}
  ItoTriple t;
  t.plus = -(q_pow * g.plus) / std::sqrt(two_q);
  t.minus = (q_pow * g.minus) / std::sqrt(two_q);
  t.zero = (q * (g.plus * g.minus) - (1.0 / q) * (g.minus * g.plus)) / two_q;
  t.param = p;
  t.ell = ell;
  return t;
}

// Z = q^{-2 L0} + (q - q^-1) J_0; a scalar on the irrep, equal to
// 1 + (q - q^-1)^2/[2] C2q, with eigenvalue cosh((2l+1)tau)/cosh(tau).
inline OperatorMatrix z_operator(SpinLabel ell,
                                 const DeformationParameter& p) {
  detail::require_real_or_classical(p, "z_operator");
  const ItoTriple t = build_ito(ell, p);
  const double tau = p.tau();
  const GeneratorTriple g = suq2_generators(ell, p);
  const OperatorMatrix q_pow2 = diagonal_map(
      g.zero, [tau](double m) { return std::exp(-2.0 * tau * m); });
  return q_pow2 + 2.0 * std::sinh(tau) * t.zero;
}

inline double z_eigenvalue(SpinLabel ell, const DeformationParameter& p) {
  detail::require_real_or_classical(p, "z_eigenvalue");
  if (p.is_classical()) return 1.0;
  const double tau = p.tau();
  return std::cosh((ell.two_ell + 1) * tau) / std::cosh(tau);
}

struct Rank1Components {
  OperatorMatrix plus;   // m = +1
  OperatorMatrix zero;   // m = 0
  OperatorMatrix minus;  // m = -1
};

// Tensor product [J (x) J]^{(1/q)}_{1,m}: couples the q-family components
// through the 1/q Clebsch-Gordan coefficients (tau -> -tau).
inline Rank1Components tensor_product_rank1(const ItoTriple& t) {
  const double inv_tau = -t.param.tau();
  auto cg = [inv_tau](int m1, int m2, int m) {
    return detail::qcg_1x1_to_1_raw(m1, m2, m, inv_tau);
  };
  Rank1Components out;
  out.plus = cg(1, 0, 1) * (t.plus * t.zero) + cg(0, 1, 1) * (t.zero * t.plus);
  out.zero = cg(1, -1, 0) * (t.plus * t.minus) +
             cg(-1, 1, 0) * (t.minus * t.plus) +
             cg(0, 0, 0) * (t.zero * t.zero);
  out.minus =
      cg(0, -1, -1) * (t.zero * t.minus) + cg(-1, 0, -1) * (t.minus * t.zero);
  return out;
}

// Scalar product (J . J)^{(1/q)} = sum_m (-q)^{-m} J_m J_{-m}
//                               = -q^-1 J_{+1} J_{-1} + J_0^2 - q J_{-1} J_{+1}.
inline OperatorMatrix scalar_product(const ItoTriple& t) {
  const double q = std::exp(t.param.tau());
  return -(1.0 / q) * (t.plus * t.minus) + t.zero * t.zero -
         q * (t.minus * t.plus);
}

// Rotational Hamiltonian A (1 - Z^-2)/(q - q^-1)^2 in cm^-1.  The classical
// regime is rejected (the denominator vanishes; use the plain rotor there).
inline OperatorMatrix ito_hamiltonian_matrix(SpinLabel ell,
                                             const DeformationParameter& p,
                                             double A) {
  if (p.regime() != Regime::Real)
    throw std::domain_error(
        "ito_hamiltonian_matrix: requires the real regime (q = exp(tau), "
        "tau > 0)");
  if (!(A > 0.0))
    throw std::domain_error("ito_hamiltonian_matrix: A must be positive");
  const OperatorMatrix z = z_operator(ell, p);
  // Z is diagonal in this basis; invert and square entrywise.
  OperatorMatrix inv_sq = OperatorMatrix::Zero(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    inv_sq(i, i) = 1.0 / (z(i, i) * z(i, i));
  const double denom = 2.0 * std::sinh(p.tau());  // q - q^-1
  return (A / (denom * denom)) *
         (OperatorMatrix::Identity(z.rows(), z.cols()) - inv_sq);
}

// Closed-form eigenvalue of the Hamiltonian above.
inline double ito_hamiltonian_eigenvalue(SpinLabel ell, double tau, double A) {
  const double s = std::sinh(tau);
  const double r = std::cosh(tau) / std::cosh((ell.two_ell + 1) * tau);
  return A / (4.0 * s * s) * (1.0 - r * r);
}

// Scale-normalized residuals of the tensor-operator relations: the defining
// commutators with the generators, Hermitian conjugation, the closed
// commutators among the components, tensor products against -sqrt([2]/[4]) Z
// J_m, the two forms of Z, its factorization, the scalar products and their
// eigenvalues, and (real regime) the Hamiltonian's invariance under both
// algebras and its closed-form spectrum.
inline std::map<std::string, double> ito_residuals(
    SpinLabel ell, const DeformationParameter& p) {
  detail::require_real_or_classical(p, "ito_residuals");
  std::map<std::string, double> r;
  const int d = ell.dimension();
  const GeneratorTriple L = suq2_generators(ell, p);
  const GeneratorTriple l = su2_generators(ell);
  const ItoTriple t = build_ito(ell, p);
  const double tau = p.tau();
  const double q = std::exp(tau);
  const double dq = q - 1.0 / q;
  const double two_q = q_number(2.0, p);
  const OperatorMatrix id = OperatorMatrix::Identity(d, d);
  const OperatorMatrix q_pow = diagonal_map(
      L.zero, [tau](double m) { return std::exp(-tau * m); });  // q^{-L0}
  const OperatorMatrix q_pow2 = q_pow * q_pow;                  // q^{-2L0}
  const OperatorMatrix c2q = casimir_q(ell, p);

  const OperatorMatrix comps[3] = {t.plus, t.zero, t.minus};
  const int ms[3] = {1, 0, -1};

  // weight commutators [L0, J_m] = m J_m
  for (int k = 0; k < 3; ++k)
    r["tensor_weight_m" + std::to_string(ms[k])] =
        commutator_residual(L.zero, comps[k], ms[k] * comps[k]);

  // ladder q-commutators [L+-, J_m]_{q^m} = sqrt([1-+m][2+-m]) J_{m+-1} q^{-L0}
  for (int k = 0; k < 3; ++k) {
    const int m = ms[k];
    const OperatorMatrix up =
        m == 1 ? OperatorMatrix::Zero(d, d).eval() : comps[k - 1];
    const OperatorMatrix dn =
        m == -1 ? OperatorMatrix::Zero(d, d).eval() : comps[k + 1];
    const double cu = std::sqrt(q_number(1.0 - m, p) * q_number(2.0 + m, p));
    const double cd = std::sqrt(q_number(1.0 + m, p) * q_number(2.0 - m, p));
    r["tensor_ladder_plus_m" + std::to_string(m)] = commutator_residual(
        L.plus, comps[k], cu * (up * q_pow), std::pow(q, m));
    r["tensor_ladder_minus_m" + std::to_string(m)] = commutator_residual(
        L.minus, comps[k], cd * (dn * q_pow), std::pow(q, m));
  }

  // Hermitian conjugation: (J_m)^dag = (-1)^m q^{-m} J_{-m}
  r["conjugation_plus"] =
      identity_residual(t.plus.adjoint(), -(1.0 / q) * t.minus);
  r["conjugation_minus"] = identity_residual(t.minus.adjoint(), -q * t.plus);
  r["conjugation_zero"] = identity_residual(t.zero.adjoint(), t.zero);

  // J_0 from ladder products vs its Casimir form
  // (q [2 L0] + (q - q^-1)(C2q - [L0][L0+1]))/[2]
  {
    const OperatorMatrix two_l0_q = diagonal_map(
        L.zero, [&p](double m) { return q_number(2.0 * m, p); });
    const OperatorMatrix weight = diagonal_map(L.zero, [&p](double m) {
      return q_number(m, p) * q_number(m + 1.0, p);
    });
    r["component_zero_casimir_form"] = identity_residual(
        t.zero, (q * two_l0_q + dq * (c2q - weight)) / two_q);
  }

  // closed commutators among the components
  r["component_comm_pz"] =
      commutator_residual(t.plus, t.zero, -(q * q_pow2) * t.plus);
  r["component_comm_mz"] =
      commutator_residual(t.minus, t.zero, (q_pow2 / q) * t.minus);
  r["component_comm_pm"] =
      commutator_residual(t.plus, t.minus, -(q_pow2 * t.zero));

  // Z: definition vs Casimir form, factorization, eigenvalues
  const OperatorMatrix z = z_operator(ell, p);
  const OperatorMatrix z_cas = id + (dq * dq / two_q) * c2q;
  r["z_two_forms"] = identity_residual(z, z_cas);
  r["z_factorization"] = identity_residual(
      z * z - id, (dq * dq / two_q) * c2q *
                      (2.0 * id + (dq * dq / two_q) * c2q));
  const double lq = q_number(ell.ell(), p) * q_number(ell.ell() + 1.0, p);
  r["z_eigen_qnumber"] = identity_residual(
      z, ((q_number(ell.two_ell + 2.0, p) - q_number(ell.two_ell, p)) /
          two_q) *
             id);
  r["z_eigen_casimir"] = identity_residual(z, (1.0 + dq * dq / two_q * lq) * id);
  r["z_eigen_cosh"] = identity_residual(z, z_eigenvalue(ell, p) * id);

  // tensor products [J (x) J]_{1,m} = -sqrt([2]/[4]) Z J_m
  const double norm = detail::cg_norm(tau);
  const Rank1Components tp = tensor_product_rank1(t);
  r["tensor_product_m1"] = identity_residual(tp.plus, -norm * (z * t.plus));
  r["tensor_product_m0"] = identity_residual(tp.zero, -norm * (z * t.zero));
  r["tensor_product_m-1"] =
      identity_residual(tp.minus, -norm * (z * t.minus));

  // scalar product: closed form and eigenvalue [l]_{q^2}[l+1]_{q^2}
  const OperatorMatrix sp = scalar_product(t);
  if (p.is_classical()) {
    r["scalar_product_closed"] = identity_residual(sp, casimir_su2(ell));
  } else {
    r["scalar_product_closed"] =
        identity_residual(sp, (z * z - id) / (dq * dq));
  }
  r["scalar_product_eigen"] = identity_residual(
      sp, q_number_base_q2(ell.ell(), p) *
              q_number_base_q2(ell.ell() + 1.0, p) * id);

  // normalized components J'_m = J_m / Z keep the coupling relations with
  // the Z factor stripped
  const double zval = z_eigenvalue(ell, p);
  ItoTriple tn = t;
  tn.plus /= zval;
  tn.minus /= zval;
  tn.zero /= zval;
  const Rank1Components tpn = tensor_product_rank1(tn);
  r["normalized_tensor_product_m1"] =
      identity_residual(tpn.plus, -norm * tn.plus);
  r["normalized_tensor_product_m0"] =
      identity_residual(tpn.zero, -norm * tn.zero);
  r["normalized_tensor_product_m-1"] =
      identity_residual(tpn.minus, -norm * tn.minus);

  if (p.regime() == Regime::Real) {
    r["normalized_scalar_product"] = identity_residual(
        scalar_product(tn), (id - id / (zval * zval)) / (dq * dq));

    const double A_probe = 1.0;
    const OperatorMatrix h = ito_hamiltonian_matrix(ell, p, A_probe);
    r["hamiltonian_comm_Lplus"] = commutator_residual(
        h, L.plus, OperatorMatrix::Zero(d, d));
    r["hamiltonian_comm_Lminus"] = commutator_residual(
        h, L.minus, OperatorMatrix::Zero(d, d));
    r["hamiltonian_comm_L0"] =
        commutator_residual(h, L.zero, OperatorMatrix::Zero(d, d));
    r["hamiltonian_comm_lplus"] =
        commutator_residual(h, l.plus, OperatorMatrix::Zero(d, d));
    r["hamiltonian_comm_lminus"] =
        commutator_residual(h, l.minus, OperatorMatrix::Zero(d, d));
    r["hamiltonian_comm_l0"] =
        commutator_residual(h, l.zero, OperatorMatrix::Zero(d, d));
    r["hamiltonian_comm_Jplus"] =
        commutator_residual(h, t.plus, OperatorMatrix::Zero(d, d));
    r["hamiltonian_comm_Jminus"] =
        commutator_residual(h, t.minus, OperatorMatrix::Zero(d, d));
    r["hamiltonian_comm_J0"] =
        commutator_residual(h, t.zero, OperatorMatrix::Zero(d, d));

    const double e_closed = ito_hamiltonian_eigenvalue(ell, tau, A_probe);
    r["hamiltonian_eigen_closed"] =
        identity_residual(h, e_closed * id) /
        std::max(1.0, std::abs(e_closed));
  }
  return r;
}

}  // namespace qrot
