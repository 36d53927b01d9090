#include "dppmarkov/independence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "dppmarkov/linalg.hpp"

namespace dppmarkov {

namespace {

// Row of element i in a matrix laid out over `span` in label order.
int local_index(NodeSet span, int i) { return std::popcount(span.bits() & ((NodeSet::Bits{1} << i) - 1)); }

// max over (a, b) of M_ab^2 / (M_aa M_bb), with rows/cols of `m` laid out over `span`.
double max_squared_correlation(const Eigen::MatrixXd& m, NodeSet span, NodeSet a, NodeSet b) {
  double worst = 0;
  for (int i : a.elements()) {
    const int ri = local_index(span, i);
    for (int j : b.elements()) {
      const int rj = local_index(span, j);
      const double denom = m(ri, ri) * m(rj, rj);
      const double num = m(ri, rj) * m(ri, rj);
      worst = std::max(worst, denom > 0 ? num / denom : std::numeric_limits<double>::infinity());
    }
  }
  return worst;
}

}  // namespace

const char* to_string(Context context) { return context == Context::ones ? "ones" : "zeros"; }

void require_disjoint(NodeSet all, NodeSet a, NodeSet b, NodeSet c) {
  if (a.empty() || b.empty()) throw DomainError("independence sets A and B must be nonempty");
  if (!a.disjoint(b) || !a.disjoint(c) || !b.disjoint(c)) throw DomainError("sets A, B, C overlap");
  if (!all.includes(a | b | c)) throw DomainError("index set outside the ground set");
}

// IndependenceModel --------------------------------------------------------

IndependenceModel::IndependenceModel(std::vector<std::string> ground, std::optional<Context> context)
    : ground_(std::move(ground)), context_(context) {
  if (size() > kMaxModelSize) throw CapacityError("independence model", size(), kMaxModelSize);
  present_.assign(std::size_t{1} << (3 * size()), false);
}

std::size_t IndependenceModel::key(const Triple& t) const {
  const int n = size();
  return std::size_t{t.a.bits()} | (std::size_t{t.b.bits()} << n) | (std::size_t{t.c.bits()} << (2 * n));
}

void IndependenceModel::add(const Triple& t) {
  require_disjoint(all(), t.a, t.b, t.c);
  const auto k = key(t);
  if (!present_[k]) {
    present_[k] = true;
    statements_.insert(t);
  }
}

void IndependenceModel::add_symmetric(const Triple& t) {
  add(t);
  add(t.swapped());
}

bool IndependenceModel::contains(const Triple& t) const {
  if (!all().includes(t.a | t.b | t.c)) return false;
  return present_[key(t)];
}

// Determinant conditions ---------------------------------------------------

CiVerdict ci_context_ones(const SymMatrix& kernel, NodeSet a, NodeSet b, NodeSet c, double tol) {
  require_disjoint(kernel.all(), a, b, c);
  const NodeSet abc = a | b | c;
  const NodeSet ab = a | b;

  const Eigen::MatrixXd k_abc = submatrix(kernel, abc, abc);
  if (is_singular(k_abc)) throw DegeneracyError("K_ABC", det(k_abc));
  const Eigen::MatrixXd k_c = submatrix(kernel, c, c);
  if (is_singular(k_c)) throw DegeneracyError("K_C", det(k_c));

  CiVerdict v;
  v.tolerance_used = tol;

  // (1) det(K_ABC) det(K_C) = det(K_AC) det(K_BC); with C empty, det(K_AB) = det(K_A) det(K_B).
  const double lhs = det(k_abc) * det(k_c);
  const double rhs = principal_minor(kernel, a | c) * principal_minor(kernel, b | c);
  v.det_identity_absolute = std::abs(lhs - rhs);
  v.residuals[kDetIdentity] = v.det_identity_absolute / std::max(std::abs(rhs), std::numeric_limits<double>::min());

  // (2) (K_ABC^-1)_{A,B} = 0.
  const Eigen::MatrixXd precision = inverse(k_abc, "K_ABC");
  v.residuals[kInverseBlock] = max_squared_correlation(precision, abc, a, b);

  // (3) K_{A,B} = K_{A,C} K_C^-1 K_{C,B}, read off the Schur complement of K_C in K_ABC.
  Eigen::MatrixXd schur = submatrix(kernel, ab, ab);
  if (!c.empty()) {
    const Eigen::MatrixXd cross = submatrix(kernel, c, ab);
    schur -= cross.transpose() * k_c.partialPivLu().solve(cross);
  }
  v.residuals[kSchurBlock] = max_squared_correlation(schur, ab, a, b);

  int passing = 0;
  bool in_band = true;
  for (const auto& [name, r] : v.residuals) {
    if (r <= tol) ++passing;
    if (r < tol / 10 || r > tol * 10) in_band = false;
  }
  v.independent = passing == 3;
  v.consistent = passing == 0 || passing == 3;
  v.ambiguous = !v.consistent && in_band;
  return v;
}

CiVerdict ci_context(const DppModel& model, NodeSet a, NodeSet b, NodeSet c, Context context, double tol) {
  return ci_context_ones(context == Context::ones ? model.kernel() : model.complement_kernel(), a, b, c, tol);
}

bool marginal_independent(const SymMatrix& kernel, NodeSet a, NodeSet b, double tol) {
  require_disjoint(kernel.all(), a, b, NodeSet{});
  return submatrix(kernel, a, b).cwiseAbs().maxCoeff() <= tol;
}

// Joint-table oracle -------------------------------------------------------

bool ci_oracle(const JointTable& table, NodeSet a, NodeSet b, NodeSet c, double atol) {
  require_disjoint(table.all(), a, b, c);
  const NodeSet abc = a | b | c;
  const auto& mass = table.masses();
  // Marginals indexed by the uncompressed bitmask restricted to the relevant sets.
  std::vector<double> p_abc(mass.size(), 0.0), p_ac(mass.size(), 0.0), p_bc(mass.size(), 0.0),
      p_c(mass.size(), 0.0);
  for (NodeSet::Bits m = 0; m < mass.size(); ++m) {
    const double w = mass[m];
    if (w == 0) continue;
    p_abc[m & abc.bits()] += w;
    p_ac[m & (a | c).bits()] += w;
    p_bc[m & (b | c).bits()] += w;
    p_c[m & c.bits()] += w;
  }
  bool independent = true;
  for_each_subset(c, [&](NodeSet xc) {
    if (!independent) return;
    const double pc = p_c[xc.bits()];
    if (pc <= kNullEvidenceProbability) return;
    for_each_subset(a, [&](NodeSet xa) {
      if (!independent) return;
      for_each_subset(b, [&](NodeSet xb) {
        const double joint = p_abc[(xa | xb | xc).bits()] / pc;
        const double prod = (p_ac[(xa | xc).bits()] / pc) * (p_bc[(xb | xc).bits()] / pc);
        if (std::abs(joint - prod) > atol) independent = false;
      });
    });
  });
  return independent;
}

bool ci_context_oracle(const JointTable& table, NodeSet a, NodeSet b, NodeSet d, const Evidence& context,
                       double atol) {
  const NodeSet s = context.support();
  if (!context.ones.disjoint(context.zeros)) throw DomainError("context assigns both 0 and 1");
  require_disjoint(table.all(), a, b, d);
  if (!s.disjoint(a | b | d)) throw DomainError("context overlaps A, B or D");
  // Outside the context the restricted table has no mass, so only the fixed context is examined.
  return ci_oracle(table.restrict_to(context), a, b, d | s, atol);
}

IndependenceModel enumerate_model(const JointTable& table, double atol) {
  if (table.size() > kMaxModelSize) throw CapacityError("enumerate_model", table.size(), kMaxModelSize);
  IndependenceModel model(table.labels());
  for_each_canonical_triple(table.all(), [&](const Triple& t) {
    if (ci_oracle(table, t.a, t.b, t.c, atol)) model.add_symmetric(t);
  });
  return model;
}

IndependenceModel enumerate_context_model(const DppModel& dpp, Context context, double tol) {
  if (dpp.size() > kMaxModelSize) throw CapacityError("enumerate_context_model", dpp.size(), kMaxModelSize);
  IndependenceModel model(dpp.labels(), context);
  for_each_canonical_triple(dpp.all(), [&](const Triple& t) {
    if (ci_context(dpp, t.a, t.b, t.c, context, tol).independent) model.add_symmetric(t);
  });
  return model;
}

IndependenceModel enumerate_context_model(const JointTable& table, Context context, double atol) {
  if (table.size() > kMaxModelSize) throw CapacityError("enumerate_context_model", table.size(), kMaxModelSize);
  IndependenceModel model(table.labels(), context);
  for_each_canonical_triple(table.all(), [&](const Triple& t) {
    const Evidence fixed = context == Context::ones ? Evidence{t.c, {}} : Evidence{{}, t.c};
    if (table.probability(fixed) <= kNullEvidenceProbability) return;
    if (ci_context_oracle(table, t.a, t.b, NodeSet{}, fixed, atol)) model.add_symmetric(t);
  });
  return model;
}

}  // namespace dppmarkov
