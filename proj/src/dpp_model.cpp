#include "dppmarkov/dpp_model.hpp"

#include <cmath>
#include <numeric>

namespace dppmarkov {

namespace {

SymMatrix identity_minus(const SymMatrix& k) {
  const auto n = k.size();
  return SymMatrix(k.labels(), SymMatrix::Matrix::Identity(n, n) - k.entries());
}

void require_subset(NodeSet all, NodeSet s) {
  if (!all.includes(s)) throw DomainError("index set outside the ground set");
}

DppModel condition_on_ones(const DppModel& model, NodeSet ones) {
  return DppModel(schur_complement(model.kernel(), ones));
}

}  // namespace

Evidence Evidence::from_labels(const std::vector<std::string>& labels, const std::map<std::string, int>& values) {
  Evidence e;
  for (const auto& [label, value] : values) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw DomainError("unknown label '" + label + "'");
    const int i = static_cast<int>(it - labels.begin());
    if (value == 1) {
      e.ones = e.ones.with(i);
    } else if (value == 0) {
      e.zeros = e.zeros.with(i);
    } else {
      throw DomainError("evidence value for '" + label + "' must be 0 or 1");
    }
  }
  return e;
}

DppModel::DppModel(SymMatrix kernel, double tol_psd) : DppModel(kernel, identity_minus(kernel), tol_psd) {}

DppModel::DppModel(SymMatrix kernel, SymMatrix complement, double tol_psd)
    : kernel_(std::move(kernel)), complement_(std::move(complement)) {
  const auto report = validate_kernel(kernel_, tol_psd);
  if (!report.is_valid_kernel) {
    std::string msg = "not a valid DPP kernel";
    for (const auto& v : report.violations) msg += "; " + v;
    throw DomainError(msg);
  }
}

DppModel complement(const DppModel& model) {
  return DppModel(model.complement_, model.kernel_, 1e-10);
}

double mobius(const DppModel& model, NodeSet a) {
  require_subset(model.all(), a);
  return principal_minor(model.kernel(), a);
}

double mobius(const DppModel& model, std::span<const std::string> labels) {
  return mobius(model, model.kernel().select(labels));
}

MobiusParams all_mobius(const DppModel& model) {
  const int n = model.size();
  if (n > kMaxMobiusTableSize) throw CapacityError("all_mobius", n, kMaxMobiusTableSize);
  MobiusParams params;
  params.labels = model.labels();
  params.q.resize(std::size_t{1} << n);
  for (NodeSet::Bits m = 0; m < params.q.size(); ++m) params.q[m] = mobius(model, NodeSet(m));
  for (NodeSet::Bits m = 1; m < params.q.size(); ++m) {
    for (int i : NodeSet(m).elements()) {
      const double parent = params.q[NodeSet(m).without(i).bits()];
      if (params.q[m] > parent + 1e-12) {
        params.warnings.push_back("q not monotone at mask " + std::to_string(m));
        break;
      }
    }
  }
  return params;
}

double joint_prob(const DppModel& model, NodeSet ones, Diagnostics* diagnostics) {
  require_subset(model.all(), ones);
  double total = 0;
  for_each_subset(model.all() - ones, [&](NodeSet extra) {
    const double q = mobius(model, ones | extra);
    total += (extra.size() % 2 == 0) ? q : -q;
  });
  if (total < -kNegativeMassTolerance && diagnostics != nullptr) {
    diagnostics->warnings.push_back("inclusion-exclusion residue " + std::to_string(total) + " at mask " +
                                    std::to_string(ones.bits()));
  }
  return std::clamp(total, 0.0, 1.0);
}

JointTable joint_table(const DppModel& model) {
  const int n = model.size();
  if (n > kMaxJointTableSize) throw CapacityError("joint_table", n, kMaxJointTableSize);
  std::vector<double> f = all_mobius(model).q;
  // f[A] <- sum_{B ⊇ A} (-1)^{|B \ A|} q_B, one coordinate at a time.
  for (int i = 0; i < n; ++i) {
    const NodeSet::Bits bit = NodeSet::Bits{1} << i;
    for (NodeSet::Bits m = 0; m < f.size(); ++m) {
      if (!(m & bit)) f[m] -= f[m | bit];
    }
  }
  return JointTable(model.labels(), std::move(f));
}

DppModel marginalize(const DppModel& model, NodeSet keep) {
  require_subset(model.all(), keep);
  if (keep.empty()) throw DomainError("marginalization onto the empty set");
  return DppModel(model.kernel().restrict_to(keep));
}

double evidence_probability(const DppModel& model, const Evidence& evidence) {
  require_subset(model.all(), evidence.support());
  if (!evidence.ones.disjoint(evidence.zeros)) throw DomainError("evidence assigns both 0 and 1");
  if (model.size() <= kMaxJointTableSize) return joint_table(model).probability(evidence);
  const double p_ones = mobius(model, evidence.ones);
  if (evidence.zeros.empty() || p_ones <= kNullEvidenceProbability) return p_ones;
  const DppModel reduced = condition_on_ones(model, evidence.ones);
  const NodeSet zeros(compress_bits(evidence.zeros.bits(), (model.all() - evidence.ones).bits()));
  return p_ones * principal_minor(reduced.complement_kernel(), zeros);
}

DppModel condition(const DppModel& model, const Evidence& evidence) {
  require_subset(model.all(), evidence.support());
  if (!evidence.ones.disjoint(evidence.zeros)) throw DomainError("evidence assigns both 0 and 1");
  if (evidence.support() == model.all()) throw DomainError("conditioning on the full ground set");
  if (evidence.support().empty()) return model;

  const double p = evidence_probability(model, evidence);
  if (p <= kNullEvidenceProbability) throw NullEvidenceError(p);

  DppModel current = evidence.ones.empty() ? model : condition_on_ones(model, evidence.ones);
  if (!evidence.zeros.empty()) {
    const NodeSet zeros(compress_bits(evidence.zeros.bits(), (model.all() - evidence.ones).bits()));
    current = complement(condition_on_ones(complement(current), zeros));
  }
  return current;
}

double pair_correlation(const DppModel& model, int i, int j) {
  const int n = model.size();
  if (i < 0 || j < 0 || i >= n || j >= n) throw DomainError("index outside the ground set");
  if (i == j) throw DomainError("pair_correlation needs two distinct coordinates");
  const auto& k = model.kernel();
  for (int v : {i, j}) {
    if (k(v, v) <= 1e-12 || k(v, v) >= 1 - 1e-12) {
      throw UndefinedCorrelationError("marginal of '" + model.labels()[v] + "' is degenerate");
    }
  }
  return -k(i, j) * k(i, j) / std::sqrt(k(i, i) * (1 - k(i, i)) * k(j, j) * (1 - k(j, j)));
}

// JointTable ---------------------------------------------------------------

JointTable::JointTable(std::vector<std::string> labels, std::vector<double> mass)
    : labels_(std::move(labels)), mass_(std::move(mass)) {
  if (labels_.size() > static_cast<std::size_t>(kMaxJointTableSize)) {
    throw CapacityError("joint table", static_cast<int>(labels_.size()), kMaxJointTableSize);
  }
  if (mass_.size() != (std::size_t{1} << labels_.size())) {
    throw DomainError("joint table needs 2^n masses");
  }
  for (std::size_t m = 0; m < mass_.size(); ++m) {
    if (!std::isfinite(mass_[m])) throw DomainError("non-finite mass");
    if (mass_[m] < 0) {
      if (mass_[m] < -kNegativeMassTolerance) {
        warnings_.push_back("clamped mass " + std::to_string(mass_[m]) + " at mask " + std::to_string(m));
      }
      mass_[m] = 0;
    }
  }
  const double total = std::accumulate(mass_.begin(), mass_.end(), 0.0);
  if (std::abs(total - 1) > 1e-9) throw DomainError("masses sum to " + std::to_string(total));
}

double JointTable::probability(const Evidence& event) const {
  double p = 0;
  for (NodeSet::Bits m = 0; m < mass_.size(); ++m) {
    const NodeSet x(m);
    if (x.includes(event.ones) && x.disjoint(event.zeros)) p += mass_[m];
  }
  return p;
}

JointTable JointTable::marginal(NodeSet keep) const {
  if (!all().includes(keep)) throw DomainError("index set outside the ground set");
  std::vector<double> out(std::size_t{1} << keep.size(), 0.0);
  for (NodeSet::Bits m = 0; m < mass_.size(); ++m) out[compress_bits(m, keep.bits())] += mass_[m];
  std::vector<std::string> labels;
  for (int i : keep.elements()) labels.push_back(labels_[i]);
  return JointTable(std::move(labels), std::move(out));
}

JointTable JointTable::restrict_to(const Evidence& evidence) const {
  const double p = probability(evidence);
  if (p <= kNullEvidenceProbability) throw NullEvidenceError(p);
  std::vector<double> out(mass_.size(), 0.0);
  for (NodeSet::Bits m = 0; m < mass_.size(); ++m) {
    const NodeSet x(m);
    if (x.includes(evidence.ones) && x.disjoint(evidence.zeros)) out[m] = mass_[m] / p;
  }
  return JointTable(labels_, std::move(out));
}

JointTable JointTable::condition(const Evidence& evidence) const {
  const NodeSet rest = all() - evidence.support();
  return restrict_to(evidence).marginal(rest);
}

JointTable JointTable::flipped() const {
  std::vector<double> out(mass_.size());
  const NodeSet::Bits full = all().bits();
  for (NodeSet::Bits m = 0; m < mass_.size(); ++m) out[m ^ full] = mass_[m];
  return JointTable(labels_, std::move(out));
}

}  // namespace dppmarkov
