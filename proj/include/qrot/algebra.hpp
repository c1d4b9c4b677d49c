#pragma once

// Finite-dimensional matrix realizations of su(2) and su_q(2) on the shared
// |l,m> basis, their Casimir operators, and numerical commutator checks.
//
// Both algebras act on the same (2l+1)-dimensional space.  The deformed
// ladder operators have matrix elements sqrt([l-+m][l+-m+1]) while the
// classical ones carry sqrt((l-+m)(l+-m+1)); L0 and l0 coincide (diag m).

#include <map>
#include <string>

#include "qrot/matrix.hpp"
#include "qrot/qnum.hpp"

namespace qrot {

// Spin label storing 2l so half-integer l stays exact.
struct SpinLabel {
  int two_ell = 0;

  explicit SpinLabel(int te) : two_ell(te) {
    if (te < 0) throw std::domain_error("SpinLabel: 2l must be nonnegative");
  }
  int dimension() const { return two_ell + 1; }
  double ell() const { return 0.5 * two_ell; }
  // Weight at basis index i (m descending from +l).
  double m_at(int i) const { return 0.5 * (two_ell - 2 * i); }
};

struct GeneratorTriple {
  OperatorMatrix plus;
  OperatorMatrix minus;
  OperatorMatrix zero;
};

namespace detail {

inline GeneratorTriple ladder_matrices(SpinLabel ell, bool deformed,
                                       const DeformationParameter& p) {
  const int d = ell.dimension();
  GeneratorTriple g{OperatorMatrix::Zero(d, d), OperatorMatrix::Zero(d, d),
                    OperatorMatrix::Zero(d, d)};
  for (int i = 0; i < d; ++i) g.zero(i, i) = ell.m_at(i);
  for (int j = 1; j < d; ++j) {
    // raising element <l,m+1|X+|l,m> at column j (state m), row j-1.
    const double m = ell.m_at(j);
    const double a = ell.ell() - m;      // l - m
    const double b = ell.ell() + m + 1;  // l + m + 1
    const double prod =
        deformed ? q_number(a, p) * q_number(b, p) : a * b;
    if (prod < 0.0)
      throw std::domain_error(
          "deformed matrix element [l-m][l+m+1] is negative; irrep is not "
          "unitary for this phase tau");
    const double c = std::sqrt(prod);
    g.plus(j - 1, j) = c;
    g.minus(j, j - 1) = c;  // <l,m|X-|l,m+1> equals the raising element
  }
  return g;
}

}  // namespace detail

// su_q(2) generators L+, L-, L0 on the irrep labeled by ell.
inline GeneratorTriple suq2_generators(SpinLabel ell,
                                       const DeformationParameter& p) {
  p.check_irrep(ell.two_ell);
  return detail::ladder_matrices(ell, true, p);
}

// Classical su(2) generators l+, l-, l0.
inline GeneratorTriple su2_generators(SpinLabel ell) {
  return detail::ladder_matrices(ell, false,
                                 DeformationParameter::classical());
}

// Apply f entrywise to the (real) diagonal of a diagonal matrix.
template <typename F>
OperatorMatrix diagonal_map(const OperatorMatrix& d, F f) {
  OperatorMatrix out = OperatorMatrix::Zero(d.rows(), d.cols());
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    out(i, i) = f(d(i, i).real());
  return out;
}

// Deformed Casimir C2q = L- L+ + [L0][L0+1]; equals [l][l+1] Id on the irrep.
inline OperatorMatrix casimir_q(SpinLabel ell, const DeformationParameter& p) {
  const GeneratorTriple g = suq2_generators(ell, p);
  const OperatorMatrix weight = diagonal_map(g.zero, [&p](double m) {
    return q_number(m, p) * q_number(m + 1, p);
  });
  return g.minus * g.plus + weight;
}

// Classical Casimir C2 = l- l+ + l0(l0+1); equals l(l+1) Id.
inline OperatorMatrix casimir_su2(SpinLabel ell) {
  const GeneratorTriple g = su2_generators(ell);
  const OperatorMatrix weight =
      diagonal_map(g.zero, [](double m) { return m * (m + 1); });
  return g.minus * g.plus + weight;
}

// Scale-normalized residuals of the defining commutators, of the invariance
// of C2q under both algebras, and the norms of the cross commutators
// [L+,l+], [L-,l-] (which must stay away from zero off the classical point
// for 2l >= 3; for 2l <= 2 they vanish identically).
inline std::map<std::string, double> commutator_residuals(
    SpinLabel ell, const DeformationParameter& p) {
  std::map<std::string, double> r;
  const GeneratorTriple L = suq2_generators(ell, p);
  const GeneratorTriple l = su2_generators(ell);
  const OperatorMatrix c2q = casimir_q(ell, p);

  r["ladder_weight_plus"] = commutator_residual(L.zero, L.plus, L.plus);
  r["ladder_weight_minus"] = commutator_residual(L.zero, L.minus, -L.minus);
  const OperatorMatrix two_l0_q = diagonal_map(
      L.zero, [&p](double m) { return q_number(2.0 * m, p); });
  r["ladder_pair"] = commutator_residual(L.plus, L.minus, two_l0_q);

  r["casimir_comm_Lplus"] =
      commutator_residual(c2q, L.plus, OperatorMatrix::Zero(L.plus.rows(),
                                                            L.plus.cols()));
  r["casimir_comm_Lminus"] = commutator_residual(
      c2q, L.minus, OperatorMatrix::Zero(L.minus.rows(), L.minus.cols()));
  r["casimir_comm_L0"] = commutator_residual(
      c2q, L.zero, OperatorMatrix::Zero(L.zero.rows(), L.zero.cols()));
  r["casimir_comm_lplus"] = commutator_residual(
      c2q, l.plus, OperatorMatrix::Zero(l.plus.rows(), l.plus.cols()));
  r["casimir_comm_lminus"] = commutator_residual(
      c2q, l.minus, OperatorMatrix::Zero(l.minus.rows(), l.minus.cols()));
  r["casimir_comm_l0"] = commutator_residual(
      c2q, l.zero, OperatorMatrix::Zero(l.zero.rows(), l.zero.cols()));

  r["cross_noncomm_plus"] = max_abs(commutator(L.plus, l.plus));
  r["cross_noncomm_minus"] = max_abs(commutator(L.minus, l.minus));
  return r;
}

// Names in the residual report that measure non-commutation: these are
// required to exceed a floor rather than vanish.
inline bool is_noncommutation_check(const std::string& name) {
  return name.rfind("cross_noncomm_", 0) == 0;
}

// The cross commutators [L+,l+], [L-,l-] vanish identically for 2l <= 2:
// there is no two-step path for 2l <= 1, and for 2l = 2 the only path has
// equal amplitude products [2][1] = [1][2] in both orders.
inline bool cross_noncommutation_applies(SpinLabel ell,
                                         const DeformationParameter& p) {
  return !p.is_classical() && ell.two_ell >= 3;
}

}  // namespace qrot
