#include "dppmarkov/axioms.hpp"

#include <cmath>

namespace dppmarkov {

namespace {

using Found = std::optional<AxiomCounterexample>;

NodeSet one(int i) { return NodeSet::singleton(i); }

bool is_pair(const Triple& t) { return t.a.size() == 1 && t.b.size() == 1; }

// Nonempty proper subsets of x, ascending.
template <typename F>
void for_each_split(NodeSet x, F&& f) {
  for_each_subset(x, [&](NodeSet part) {
    if (!part.empty() && part != x) f(part, x - part);
  });
}

Found symmetry(const IndependenceModel& m) {
  for (const auto& t : m.statements()) {
    if (!m.contains(t.swapped())) return AxiomCounterexample{{t}, {t.swapped()}, {}};
  }
  return {};
}

// <A, B ∪ D | C>  =>  <A, B | C> and <A, D | C>
Found decomposition(const IndependenceModel& m) {
  for (const auto& t : m.statements()) {
    Found found;
    for_each_split(t.b, [&](NodeSet b, NodeSet) {
      const Triple need{t.a, b, t.c};
      if (!found && !m.contains(need)) found = AxiomCounterexample{{t}, {need}, {}};
    });
    if (found) return found;
  }
  return {};
}

// <A, B ∪ D | C>  =>  <A, B | C ∪ D> and <A, D | C ∪ B>
Found weak_union(const IndependenceModel& m) {
  for (const auto& t : m.statements()) {
    Found found;
    for_each_split(t.b, [&](NodeSet b, NodeSet d) {
      const Triple need{t.a, b, t.c | d};
      if (!found && !m.contains(need)) found = AxiomCounterexample{{t}, {need}, {}};
    });
    if (found) return found;
  }
  return {};
}

// <A, B | C ∪ D> and <A, D | C>  =>  <A, B ∪ D | C>
Found contraction(const IndependenceModel& m) {
  for (const auto& t : m.statements()) {
    Found found;
    for_each_subset(t.c, [&](NodeSet d) {
      if (found || d.empty()) return;
      const NodeSet c = t.c - d;
      const Triple other{t.a, d, c};
      const Triple need{t.a, t.b | d, c};
      if (m.contains(other) && !m.contains(need)) found = AxiomCounterexample{{t, other}, {need}, {}};
    });
    if (found) return found;
  }
  return {};
}

// <A, B | C ∪ D> and <A, D | C ∪ B>  =>  <A, B ∪ D | C>
Found intersection(const IndependenceModel& m) {
  for (const auto& t : m.statements()) {
    Found found;
    for_each_subset(t.c, [&](NodeSet d) {
      if (found || d.empty()) return;
      const NodeSet c = t.c - d;
      const Triple other{t.a, d, c | t.b};
      const Triple need{t.a, t.b | d, c};
      if (m.contains(other) && !m.contains(need)) found = AxiomCounterexample{{t, other}, {need}, {}};
    });
    if (found) return found;
  }
  return {};
}

// <A, B | C> and <A, D | C>  =>  <A, B ∪ D | C>
Found composition(const IndependenceModel& m) {
  for (const auto& t : m.statements()) {
    Found found;
    for_each_subset(m.all() - t.a - t.b - t.c, [&](NodeSet d) {
      if (found || d.empty()) return;
      const Triple other{t.a, d, t.c};
      const Triple need{t.a, t.b | d, t.c};
      if (m.contains(other) && !m.contains(need)) found = AxiomCounterexample{{t, other}, {need}, {}};
    });
    if (found) return found;
  }
  return {};
}

// <i, j | C> and <i, j | C ∪ k>  =>  <i, k | C> or <j, k | C>
Found singleton_transitivity(const IndependenceModel& m) {
  for (const auto& t : m.statements()) {
    if (!is_pair(t)) continue;
    for (int k : (m.all() - t.a - t.b - t.c).elements()) {
      const Triple other{t.a, t.b, t.c.with(k)};
      const Triple ik{t.a, one(k), t.c};
      const Triple jk{t.b, one(k), t.c};
      if (m.contains(other) && !m.contains(ik) && !m.contains(jk)) {
        return AxiomCounterexample{{t, other}, {ik, jk}, k};
      }
    }
  }
  return {};
}

// <i, j | C>  =>  <i, j | C ∪ k> for every k
Found upward_stability(const IndependenceModel& m) {
  for (const auto& t : m.statements()) {
    if (!is_pair(t)) continue;
    for (int k : (m.all() - t.a - t.b - t.c).elements()) {
      const Triple need{t.a, t.b, t.c.with(k)};
      if (!m.contains(need)) return AxiomCounterexample{{t}, {need}, k};
    }
  }
  return {};
}

// <i, j | C>  =>  <i, j | C \ k> for every k
Found downward_stability(const IndependenceModel& m) {
  for (const auto& t : m.statements()) {
    if (!is_pair(t)) continue;
    for (int k : t.c.elements()) {
      const Triple need{t.a, t.b, t.c.without(k)};
      if (!m.contains(need)) return AxiomCounterexample{{t}, {need}, k};
    }
  }
  return {};
}

}  // namespace

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::symmetry: return "symmetry";
    case Axiom::decomposition: return "decomposition";
    case Axiom::weak_union: return "weak-union";
    case Axiom::contraction: return "contraction";
    case Axiom::intersection: return "intersection";
    case Axiom::composition: return "composition";
    case Axiom::singleton_transitivity: return "singleton-transitivity";
    case Axiom::upward_stability: return "upward-stability";
    case Axiom::downward_stability: return "downward-stability";
  }
  return "?";
}

Axiom parse_axiom(std::string_view name) {
  for (Axiom a : kAllAxioms) {
    if (to_string(a) == name) return a;
  }
  throw DomainError("unknown axiom '" + std::string(name) + "'");
}

AxiomReport check_axiom(const IndependenceModel& model, Axiom axiom) {
  Found found;
  switch (axiom) {
    case Axiom::symmetry: found = symmetry(model); break;
    case Axiom::decomposition: found = decomposition(model); break;
    case Axiom::weak_union: found = weak_union(model); break;
    case Axiom::contraction: found = contraction(model); break;
    case Axiom::intersection: found = intersection(model); break;
    case Axiom::composition: found = composition(model); break;
    case Axiom::singleton_transitivity: found = singleton_transitivity(model); break;
    case Axiom::upward_stability: found = upward_stability(model); break;
    case Axiom::downward_stability: found = downward_stability(model); break;
  }
  return AxiomReport{axiom, !found.has_value(), std::move(found)};
}

std::vector<AxiomReport> check_semigraphoid(const IndependenceModel& model) {
  std::vector<AxiomReport> out;
  for (Axiom a : {Axiom::symmetry, Axiom::decomposition, Axiom::weak_union, Axiom::contraction}) {
    out.push_back(check_axiom(model, a));
  }
  return out;
}

std::vector<AxiomReport> audit_model(const IndependenceModel& model) {
  std::vector<AxiomReport> out;
  for (Axiom a : kAllAxioms) out.push_back(check_axiom(model, a));
  return out;
}

JointTable contraction_counterexample_table(double p1, double p3, double p4, double p7) {
  const double quarter = 0.25;
  if (std::abs(p1 + p3 - quarter) > 1e-12 || std::abs(p4 + p7 - quarter) > 1e-12) {
    throw DomainError("counterexample masses need p1 + p3 = p4 + p7 = 1/4");
  }
  const double ps[] = {p1, p3, p4, p7};
  for (int i = 0; i < 4; ++i) {
    if (!(ps[i] >= 0)) throw DomainError("counterexample masses must be nonnegative");
    for (int j = i + 1; j < 4; ++j) {
      if (ps[i] == ps[j]) throw DomainError("counterexample masses p1, p3, p4, p7 must be distinct");
    }
  }
  // Bit 0 = A, bit 1 = B, bit 2 = D.
  const double eighth = 0.125;
  std::vector<double> mass(8);
  mass[0b000] = p1;
  mass[0b100] = eighth;  // p2 = P(0,0,1)
  mass[0b010] = p3;
  mass[0b001] = p4;
  mass[0b110] = eighth;  // p5 = P(0,1,1)
  mass[0b101] = eighth;  // p6 = P(1,0,1)
  mass[0b011] = p7;
  mass[0b111] = eighth;  // p8 = P(1,1,1)
  return JointTable({"A", "B", "D"}, std::move(mass));
}

AxiomReport check_context_contraction(const JointTable& table, NodeSet a, NodeSet b, NodeSet d, int d_value) {
  require_disjoint(table.all(), a, b, d);
  const Evidence ctx = d_value == 1 ? Evidence{d, {}} : Evidence{{}, d};
  const bool in_context = ci_context_oracle(table, a, b, NodeSet{}, ctx);
  const bool marginal = ci_oracle(table, a, d, NodeSet{});
  AxiomReport report{Axiom::contraction, true, std::nullopt};
  if (!in_context || !marginal) return report;
  if (ci_oracle(table, a, b | d, NodeSet{})) return report;
  AxiomCounterexample cx;
  // The context premise is recorded with D as its (fixed) conditioning set.
  cx.premises = {Triple{a, b, d}, Triple{a, d, {}}};
  cx.missing = {Triple{a, b | d, {}}};
  if (!ci_oracle(table, a, b, NodeSet{})) cx.missing.push_back(Triple{a, b, {}});
  report.holds = false;
  report.counterexample = std::move(cx);
  return report;
}

}  // namespace dppmarkov
