#pragma once

// Dense complex operator matrices on a single (2l+1)-dimensional irrep.
// Basis convention everywhere: row/column index i corresponds to the weight
// m = l - i, i.e. m runs down from +l to -l.

#include <Eigen/Dense>
#include <complex>
#include <ostream>

namespace qrot {

using OperatorMatrix = Eigen::MatrixXcd;

inline double max_abs(const OperatorMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline OperatorMatrix commutator(const OperatorMatrix& a,
                                 const OperatorMatrix& b) {
  return a * b - b * a;
}

// q-commutator [A,B]_w = AB - w BA.
inline OperatorMatrix q_commutator(const OperatorMatrix& a,
                                   const OperatorMatrix& b, double w) {
  return a * b - w * (b * a);
}

// Scale-normalized defect of the identity X = Y.  The normalization keeps
// the residual meaningful when the entries themselves are large: a defect of
// a few ulps of the operands reports as ~1e-16 regardless of their size,
// while for O(1) operands this reduces to the plain max-abs-entry norm.
inline double identity_residual(const OperatorMatrix& x,
                                const OperatorMatrix& y) {
  const double scale = std::max({1.0, max_abs(x), max_abs(y)});
  return max_abs(x - y) / scale;
}

// Residual of [A,B] = R (or a q-commutator), normalized by the product
// magnitude that the cancellation runs over.
inline double commutator_residual(const OperatorMatrix& a,
                                  const OperatorMatrix& b,
                                  const OperatorMatrix& rhs,
                                  double w = 1.0) {
  const double scale =
      std::max({1.0, max_abs(a) * max_abs(b) * std::max(1.0, std::abs(w)),
                max_abs(rhs)});
  return max_abs(q_commutator(a, b, w) - rhs) / scale;
}

// Row-major text dump, one row per line, entries as "re,im" separated by
// single spaces.
inline void dump_matrix(std::ostream& os, const OperatorMatrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) os << ' ';
      os << a(i, j).real() << ',' << a(i, j).imag();
    }
    os << '\n';
  }
}

}  // namespace qrot
