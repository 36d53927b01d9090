#ifndef DPPMARKOV_INDEPENDENCE_HPP
#define DPPMARKOV_INDEPENDENCE_HPP

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dppmarkov/dpp_model.hpp"
#include "dppmarkov/node_set.hpp"
#include "dppmarkov/sym_matrix.hpp"

namespace dppmarkov {

/// Absolute tolerance of the joint-table oracle on conditional probabilities.
inline constexpr double kOracleTolerance = 1e-8;
/// Largest ground set for exhaustive enumeration of independence statements.
inline constexpr int kMaxModelSize = 7;
/// Default relative tolerance for determinant-based independence decisions.
inline constexpr double kDefaultCiTolerance = 1e-4;

inline constexpr const char* kDetIdentity = "det-identity";
inline constexpr const char* kInverseBlock = "inverse-block";
inline constexpr const char* kSchurBlock = "schur-block";

/// Which all-equal assignment the conditioning set is fixed to.
enum class Context { ones, zeros };

const char* to_string(Context context);

/// An independence statement <A, B | C>.
struct Triple {
  NodeSet a;
  NodeSet b;
  NodeSet c;

  Triple swapped() const { return {b, a, c}; }
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Outcome of the three determinant conditions for X_A ⫫ X_B | X_C = 1_C.
struct CiVerdict {
  bool independent = false;
  /// Keyed by kDetIdentity, kInverseBlock, kSchurBlock.
  std::map<std::string, double> residuals;
  double tolerance_used = 0;
  /// All three residuals fall on the same side of the tolerance.
  bool consistent = true;
  /// Residuals disagree, but all lie inside [tol / 10, tol * 10].
  bool ambiguous = false;
  /// |det(K_ABC) det(K_C) - det(K_AC) det(K_BC)| before normalization.
  double det_identity_absolute = 0;
};

/// Set of triples <A, B | C> over a ground set, optionally tagged as a context-specific
/// model in which every conditioning set is fixed to the given context.
/// Trivial statements with empty A or B are implicit and never stored.
class IndependenceModel {
 public:
  explicit IndependenceModel(std::vector<std::string> ground, std::optional<Context> context = std::nullopt);

  const std::vector<std::string>& ground() const { return ground_; }
  int size() const { return static_cast<int>(ground_.size()); }
  NodeSet all() const { return NodeSet::full(size()); }
  std::optional<Context> context() const { return context_; }

  /// Throws DomainError unless A, B nonempty and A, B, C pairwise disjoint within the ground set.
  void add(const Triple& t);
  /// Adds <A,B|C> and <B,A|C>.
  void add_symmetric(const Triple& t);

  bool contains(const Triple& t) const;
  bool contains(NodeSet a, NodeSet b, NodeSet c) const { return contains(Triple{a, b, c}); }

  /// Statements in ascending (A, B, C) bitmask order.
  const std::set<Triple>& statements() const { return statements_; }

  friend bool operator==(const IndependenceModel& x, const IndependenceModel& y) {
    return x.ground_ == y.ground_ && x.context_ == y.context_ && x.statements_ == y.statements_;
  }

 private:
  std::size_t key(const Triple& t) const;

  std::vector<std::string> ground_;
  std::optional<Context> context_;
  std::set<Triple> statements_;
  std::vector<bool> present_;
};

/// Throws DomainError unless A, B are nonempty and A, B, C are pairwise disjoint subsets of `all`.
void require_disjoint(NodeSet all, NodeSet a, NodeSet b, NodeSet c);

/// Decides X_A ⫫ X_B | X_C = 1_C from K by all three equivalent determinant conditions.
CiVerdict ci_context_ones(const SymMatrix& kernel, NodeSet a, NodeSet b, NodeSet c,
                          double tol = kDefaultCiTolerance);

/// ci_context_ones on K (ones) or I - K (zeros).
CiVerdict ci_context(const DppModel& model, NodeSet a, NodeSet b, NodeSet c, Context context,
                     double tol = kDefaultCiTolerance);

/// X_A ⫫ X_B iff K_{A,B} = 0.
bool marginal_independent(const SymMatrix& kernel, NodeSet a, NodeSet b, double tol = 1e-9);

/// Ground-truth conditional independence on a joint table, ignoring conditioning
/// assignments of probability <= kNullEvidenceProbability.
bool ci_oracle(const JointTable& table, NodeSet a, NodeSet b, NodeSet c, double atol = kOracleTolerance);

/// A ⫫ B | D in the fixed context. Throws NullEvidenceError if the context has null probability.
bool ci_context_oracle(const JointTable& table, NodeSet a, NodeSet b, NodeSet d, const Evidence& context,
                       double atol = kOracleTolerance);

/// J(P): every nontrivial triple decided by ci_oracle.
IndependenceModel enumerate_model(const JointTable& table, double atol = kOracleTolerance);

/// J_{.|X_C = 1_C}(P) (or 0_C): every triple decided by ci_context.
IndependenceModel enumerate_context_model(const DppModel& model, Context context,
                                          double tol = kDefaultCiTolerance);

/// Context model of an arbitrary table: <A, B | C> iff A ⫫ B given X_C = 1_C (or 0_C).
/// Contexts of null probability contribute no statements.
IndependenceModel enumerate_context_model(const JointTable& table, Context context,
                                          double atol = kOracleTolerance);

/// Calls f(t) for every triple with A, B nonempty and min(A) < min(B), in ascending order.
template <typename F>
void for_each_canonical_triple(NodeSet all, F&& f) {
  for_each_subset(all, [&](NodeSet a) {
    if (a.empty()) return;
    for_each_subset(all - a, [&](NodeSet b) {
      if (b.empty() || b.first() < a.first()) return;
      for_each_subset(all - a - b, [&](NodeSet c) { f(Triple{a, b, c}); });
    });
  });
}

/// Calls f(t) for every triple with A, B nonempty (both orientations), in ascending order.
template <typename F>
void for_each_triple(NodeSet all, F&& f) {
  for_each_subset(all, [&](NodeSet a) {
    if (a.empty()) return;
    for_each_subset(all - a, [&](NodeSet b) {
      if (b.empty()) return;
      for_each_subset(all - a - b, [&](NodeSet c) { f(Triple{a, b, c}); });
    });
  });
}

}  // namespace dppmarkov

#endif  // DPPMARKOV_INDEPENDENCE_HPP
