#ifndef DPPMARKOV_DPP_MODEL_HPP
#define DPPMARKOV_DPP_MODEL_HPP

#include <map>
#include <string>
#include <vector>

#include "dppmarkov/linalg.hpp"
#include "dppmarkov/node_set.hpp"
#include "dppmarkov/sym_matrix.hpp"

namespace dppmarkov {

/// Largest ground set for which a full joint table is materialized.
inline constexpr int kMaxJointTableSize = 12;
/// Largest ground set for the full table of Möbius parameters.
inline constexpr int kMaxMobiusTableSize = 20;
/// Evidence with probability at or below this is treated as null.
inline constexpr double kNullEvidenceProbability = 1e-12;
/// Inclusion-exclusion residue below -kNegativeMassTolerance is reported as a warning.
inline constexpr double kNegativeMassTolerance = 1e-12;

/// A partial binary assignment: X_v = 1 for v in `ones`, X_v = 0 for v in `zeros`.
struct Evidence {
  NodeSet ones;
  NodeSet zeros;

  NodeSet support() const { return ones | zeros; }

  /// Builds evidence from label -> bit pairs against the given label order.
  static Evidence from_labels(const std::vector<std::string>& labels, const std::map<std::string, int>& values);
};

/// Discrete DPP over the labels of its kernel.
///
/// Both K and I - K are stored; complement() swaps them, so it is an exact involution.
class DppModel {
 public:
  explicit DppModel(SymMatrix kernel, double tol_psd = 1e-10);

  const SymMatrix& kernel() const { return kernel_; }
  const SymMatrix& complement_kernel() const { return complement_; }
  const std::vector<std::string>& labels() const { return kernel_.labels(); }
  int size() const { return kernel_.size(); }
  NodeSet all() const { return kernel_.all(); }

  friend DppModel complement(const DppModel& model);

 private:
  DppModel(SymMatrix kernel, SymMatrix complement, double tol_psd);

  SymMatrix kernel_;
  SymMatrix complement_;
};

/// q_A for every subset A, indexed by bitmask.
struct MobiusParams {
  std::vector<std::string> labels;
  std::vector<double> q;
  std::vector<std::string> warnings;

  double operator[](NodeSet a) const { return q.at(a.bits()); }
};

/// Exact probability mass over {0,1}^V, indexed by the bitmask of coordinates equal to 1.
class JointTable {
 public:
  /// Clamps tiny negative masses to 0 (recording a warning below -kNegativeMassTolerance)
  /// and rejects tables whose total differs from 1 by more than 1e-9.
  JointTable(std::vector<std::string> labels, std::vector<double> mass);

  const std::vector<std::string>& labels() const { return labels_; }
  int size() const { return static_cast<int>(labels_.size()); }
  NodeSet all() const { return NodeSet::full(size()); }
  const std::vector<double>& masses() const { return mass_; }
  double mass(NodeSet ones) const { return mass_.at(ones.bits()); }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// P(X_{ones} = 1, X_{zeros} = 0).
  double probability(const Evidence& event) const;
  /// Marginal law of the coordinates in `keep`, labeled in stored order.
  JointTable marginal(NodeSet keep) const;
  /// Law of the remaining coordinates given the evidence.
  JointTable condition(const Evidence& evidence) const;
  /// Same coordinates; mass outside the evidence set to zero and the rest renormalized.
  JointTable restrict_to(const Evidence& evidence) const;
  /// Law of 1 - X.
  JointTable flipped() const;

 private:
  std::vector<std::string> labels_;
  std::vector<double> mass_;
  std::vector<std::string> warnings_;
};

/// Diagnostics sink for joint_prob.
struct Diagnostics {
  std::vector<std::string> warnings;
};

/// q_A = P(X_A = 1_A) = det(K_A); q_∅ = 1.
double mobius(const DppModel& model, NodeSet a);
double mobius(const DppModel& model, std::span<const std::string> labels);

MobiusParams all_mobius(const DppModel& model);

/// P(X = x) with x_v = 1 exactly on `ones`, by inclusion-exclusion over supersets.
double joint_prob(const DppModel& model, NodeSet ones, Diagnostics* diagnostics = nullptr);

/// All 2^n masses via a superset Möbius inversion of all_mobius.
JointTable joint_table(const DppModel& model);

/// DPP of Y ∩ A: kernel K_A.
DppModel marginalize(const DppModel& model, NodeSet keep);

/// DPP of V \ Y: kernel I - K.
DppModel complement(const DppModel& model);

/// DPP of the remaining coordinates given the evidence. Ones are applied first by a Schur
/// complement of K, then zeros by a Schur complement of I - K on the reduced model.
DppModel condition(const DppModel& model, const Evidence& evidence);

/// P(evidence), from the joint table when n <= kMaxJointTableSize, else from determinants.
double evidence_probability(const DppModel& model, const Evidence& evidence);

/// corr(X_i, X_j) = -K_ij^2 / sqrt(K_ii (1 - K_ii) K_jj (1 - K_jj)).
double pair_correlation(const DppModel& model, int i, int j);

}  // namespace dppmarkov

#endif  // DPPMARKOV_DPP_MODEL_HPP
