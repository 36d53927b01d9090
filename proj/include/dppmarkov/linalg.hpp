#ifndef DPPMARKOV_LINALG_HPP
#define DPPMARKOV_LINALG_HPP

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "dppmarkov/errors.hpp"
#include "dppmarkov/node_set.hpp"
#include "dppmarkov/sym_matrix.hpp"

namespace dppmarkov {

/// Pivot ratio below which an LU factorization is treated as singular.
inline constexpr double kSingularPivotRatio = 1e-12;

template <typename Derived>
using PlainMatrix = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Determinant by partial-pivoting LU. det of the 0x0 matrix is 1.
template <typename Derived>
typename Derived::Scalar det(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  eigen_assert(m.rows() == m.cols());
  if (m.rows() == 0) return Scalar(1);
  return Eigen::PartialPivLU<PlainMatrix<Derived>>(m).determinant();
}

/// True when the LU pivots of `m` span more than 1 / kSingularPivotRatio in magnitude.
template <typename Derived>
bool is_singular(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.rows() == 0) return false;
  Eigen::PartialPivLU<PlainMatrix<Derived>> lu(m);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const Scalar hi = pivots.maxCoeff();
  return !(hi > Scalar(0)) || pivots.minCoeff() <= Scalar(kSingularPivotRatio) * hi;
}

template <typename Derived>
PlainMatrix<Derived> inverse(const Eigen::MatrixBase<Derived>& m, const std::string& name = "M") {
  if (m.rows() == 0) return PlainMatrix<Derived>(0, 0);
  Eigen::PartialPivLU<PlainMatrix<Derived>> lu(m);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const auto hi = pivots.maxCoeff();
  if (!(hi > 0) || pivots.minCoeff() <= kSingularPivotRatio * hi) {
    throw DegeneracyError(name, static_cast<double>(lu.determinant()));
  }
  return lu.inverse();
}

/// Entries of `m` on rows x cols, in stored label order.
template <typename Scalar>
typename BasicSymMatrix<Scalar>::Matrix submatrix(const BasicSymMatrix<Scalar>& m, NodeSet rows,
                                                  NodeSet cols) {
  if (!m.all().includes(rows) || !m.all().includes(cols)) {
    throw DomainError("index set outside the ground set");
  }
  return m.entries()(rows.elements(), cols.elements());
}

template <typename Scalar>
typename BasicSymMatrix<Scalar>::Matrix submatrix(const BasicSymMatrix<Scalar>& m,
                                                  std::span<const std::string> rows,
                                                  std::span<const std::string> cols) {
  return submatrix(m, m.select(rows), m.select(cols));
}

/// Principal minor det(M_A).
template <typename Scalar>
Scalar principal_minor(const BasicSymMatrix<Scalar>& m, NodeSet a) {
  return det(submatrix(m, a, a));
}

/// Schur complement of M_A in M: M_{Ā} - M_{Ā,A} M_A^{-1} M_{A,Ā}, labeled by Ā.
template <typename Scalar>
BasicSymMatrix<Scalar> schur_complement(const BasicSymMatrix<Scalar>& m, NodeSet a) {
  if (!m.all().includes(a)) throw DomainError("index set outside the ground set");
  const NodeSet rest = m.all() - a;
  if (rest.empty()) throw DomainError("Schur complement over the full ground set is empty");
  if (a.empty()) return m;
  const auto ma = submatrix(m, a, a);
  Eigen::PartialPivLU<typename BasicSymMatrix<Scalar>::Matrix> lu(ma);
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  if (!(pivots.maxCoeff() > 0) || pivots.minCoeff() <= kSingularPivotRatio * pivots.maxCoeff()) {
    throw DegeneracyError("M_A", static_cast<double>(lu.determinant()));
  }
  const auto cross = submatrix(m, a, rest);
  typename BasicSymMatrix<Scalar>::Matrix s = submatrix(m, rest, rest) - cross.transpose() * lu.solve(cross);
  s = ((s + s.transpose()) / Scalar(2)).eval();
  return BasicSymMatrix<Scalar>(m.labels_of(rest), std::move(s));
}

template <typename Scalar>
struct BasicValidationReport {
  bool is_valid_kernel = false;
  Scalar min_eigenvalue = 0;
  Scalar max_eigenvalue = 0;
  Scalar symmetry_defect = 0;
  std::vector<std::string> violations;
};

using ValidationReport = BasicValidationReport<double>;

/// Checks 0 <= K <= I up to `tol_psd` on both spectral bounds.
template <typename Scalar>
BasicValidationReport<Scalar> validate_kernel(const BasicSymMatrix<Scalar>& m, Scalar tol_psd = Scalar(1e-10),
                                              Scalar tol_sym = Scalar(1e-9)) {
  BasicValidationReport<Scalar> report;
  report.symmetry_defect = m.symmetry_defect();
  if (m.size() > 0) {
    Eigen::SelfAdjointEigenSolver<typename BasicSymMatrix<Scalar>::Matrix> solver(m.entries(),
                                                                                 Eigen::EigenvaluesOnly);
    report.min_eigenvalue = solver.eigenvalues().minCoeff();
    report.max_eigenvalue = solver.eigenvalues().maxCoeff();
  }
  auto fmt = [](Scalar v) { return std::to_string(static_cast<double>(v)); };
  if (report.min_eigenvalue < -tol_psd) {
    report.violations.push_back("smallest eigenvalue " + fmt(report.min_eigenvalue) + " is negative");
  }
  if (report.max_eigenvalue > Scalar(1) + tol_psd) {
    report.violations.push_back("largest eigenvalue " + fmt(report.max_eigenvalue) + " exceeds 1");
  }
  if (report.symmetry_defect > tol_sym) {
    report.violations.push_back("symmetry defect " + fmt(report.symmetry_defect) + " exceeds tolerance");
  }
  report.is_valid_kernel = report.violations.empty();
  return report;
}

}  // namespace dppmarkov

#endif  // DPPMARKOV_LINALG_HPP
