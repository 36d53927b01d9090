#ifndef DPPMARKOV_SYM_MATRIX_HPP
#define DPPMARKOV_SYM_MATRIX_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "dppmarkov/errors.hpp"
#include "dppmarkov/node_set.hpp"

namespace dppmarkov {

/// Symmetric matrix whose rows and columns are indexed by an ordered list of labels.
///
/// Input that is asymmetric by at most `tol_sym` is replaced by (M + M^T) / 2 so that
/// the stored entries are exactly symmetric; larger asymmetry is rejected. The raw
/// defect max |M_ij - M_ji| is kept for reporting.
template <typename Scalar>
class BasicSymMatrix {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BasicSymMatrix() = default;

  BasicSymMatrix(std::vector<std::string> labels, Matrix entries, Scalar tol_sym = Scalar(1e-9))
      : labels_(std::move(labels)), entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols()) {
      throw DomainError("matrix is not square (" + std::to_string(entries_.rows()) + "x" +
                        std::to_string(entries_.cols()) + ")");
    }
    if (static_cast<Eigen::Index>(labels_.size()) != entries_.rows()) {
      throw DomainError("label count " + std::to_string(labels_.size()) +
                        " does not match dimension " + std::to_string(entries_.rows()));
    }
    if (labels_.size() > static_cast<std::size_t>(NodeSet::kMaxSize)) {
      throw CapacityError("symmetric matrix", static_cast<int>(labels_.size()), NodeSet::kMaxSize);
    }
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
      if (!seen.insert(l).second) throw DomainError("duplicate label '" + l + "'");
    }
    if (!entries_.allFinite()) throw DomainError("matrix has non-finite entries");
    defect_ = entries_.size() == 0 ? Scalar(0) : (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
    if (defect_ > tol_sym) {
      throw DomainError("matrix is not symmetric (max |M_ij - M_ji| = " + std::to_string(double(defect_)) +
                        ")");
    }
    if (defect_ > Scalar(0)) entries_ = ((entries_ + entries_.transpose()) / Scalar(2)).eval();
  }

  static BasicSymMatrix identity(std::vector<std::string> labels) {
    const auto n = static_cast<Eigen::Index>(labels.size());
    return BasicSymMatrix(std::move(labels), Matrix::Identity(n, n));
  }

  const std::vector<std::string>& labels() const { return labels_; }
  const Matrix& entries() const { return entries_; }
  int size() const { return static_cast<int>(labels_.size()); }
  Scalar operator()(int i, int j) const { return entries_(i, j); }
  Scalar symmetry_defect() const { return defect_; }
  NodeSet all() const { return NodeSet::full(size()); }

  int index_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw DomainError("unknown label '" + label + "'");
    return static_cast<int>(it - labels_.begin());
  }

  NodeSet select(std::span<const std::string> labels) const {
    NodeSet out;
    for (const auto& l : labels) out = out.with(index_of(l));
    return out;
  }

  std::vector<std::string> labels_of(NodeSet set) const {
    std::vector<std::string> out;
    for (int i : set.elements()) out.push_back(labels_.at(i));
    return out;
  }

  /// Principal restriction to `set`, keeping the stored label order.
  BasicSymMatrix restrict_to(NodeSet set) const {
    const auto idx = set.elements();
    return BasicSymMatrix(labels_of(set), entries_(idx, idx), Scalar(0));
  }

  friend bool operator==(const BasicSymMatrix& a, const BasicSymMatrix& b) {
    return a.labels_ == b.labels_ && a.entries_.rows() == b.entries_.rows() &&
           (a.entries_.array() == b.entries_.array()).all();
  }

 private:
  std::vector<std::string> labels_;
  Matrix entries_;
  Scalar defect_ = Scalar(0);
};

using SymMatrix = BasicSymMatrix<double>;

/// "1", "2", ..., "n".
inline std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

}  // namespace dppmarkov

#endif  // DPPMARKOV_SYM_MATRIX_HPP
