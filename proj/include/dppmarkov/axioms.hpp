#ifndef DPPMARKOV_AXIOMS_HPP
#define DPPMARKOV_AXIOMS_HPP

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dppmarkov/dpp_model.hpp"
#include "dppmarkov/independence.hpp"

namespace dppmarkov {

enum class Axiom {
  symmetry,
  decomposition,
  weak_union,
  contraction,
  intersection,
  composition,
  singleton_transitivity,
  upward_stability,
  downward_stability,
};

inline constexpr std::array<Axiom, 9> kAllAxioms = {
    Axiom::symmetry,         Axiom::decomposition,          Axiom::weak_union,
    Axiom::contraction,      Axiom::intersection,           Axiom::composition,
    Axiom::singleton_transitivity, Axiom::upward_stability, Axiom::downward_stability,
};

std::string_view to_string(Axiom axiom);
/// Accepts the names produced by to_string ("weak-union", "singleton-transitivity", ...).
Axiom parse_axiom(std::string_view name);

/// One instantiation of an axiom whose premises hold but whose conclusion fails.
struct AxiomCounterexample {
  std::vector<Triple> premises;
  /// Conclusion statements absent from the model (both disjuncts for singleton-transitivity).
  std::vector<Triple> missing;
  /// Element k for the singleton-transitivity and stability properties.
  std::optional<int> k;
};

struct AxiomReport {
  Axiom axiom = Axiom::symmetry;
  bool holds = true;
  std::optional<AxiomCounterexample> counterexample;
};

/// Exhaustive check of one property; returns the first counterexample in statement order.
AxiomReport check_axiom(const IndependenceModel& model, Axiom axiom);

/// Symmetry, decomposition, weak union, contraction.
std::vector<AxiomReport> check_semigraphoid(const IndependenceModel& model);

/// All nine properties in kAllAxioms order.
std::vector<AxiomReport> audit_model(const IndependenceModel& model);

/// Three-variable table over (A, B, D) with p2 = p5 = p6 = p8 = 1/8 and the given
/// p1 = P(0,0,0), p3 = P(0,1,0), p4 = P(1,0,0), p7 = P(1,1,0). The almost-surely-one
/// variable C is left implicit. Requires p1 + p3 = p4 + p7 = 1/4 and distinct nonnegative values.
JointTable contraction_counterexample_table(double p1, double p3, double p4, double p7);

/// Context-specific contraction on a joint table: premises A ⫫ B in context D = d_value and
/// A ⫫ D; conclusion A ⫫ B ∪ D. Premises and missing conclusion are reported as triples.
AxiomReport check_context_contraction(const JointTable& table, NodeSet a, NodeSet b, NodeSet d, int d_value);

}  // namespace dppmarkov

#endif  // DPPMARKOV_AXIOMS_HPP
