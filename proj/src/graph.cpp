#include "dppmarkov/graph.hpp"

#include <algorithm>
#include <cmath>

#include "dppmarkov/linalg.hpp"

namespace dppmarkov {

const char* to_string(GraphKind kind) { return kind == GraphKind::undirected ? "undirected" : "bidirected"; }

const char* to_string(MarkovProperty property) {
  switch (property) {
    case MarkovProperty::pairwise: return "pairwise";
    case MarkovProperty::global: return "global";
    case MarkovProperty::connected_set: return "connected-set";
    case MarkovProperty::faithful: return "faithful";
  }
  return "?";
}

Graph::Graph(std::vector<std::string> nodes, GraphKind kind)
    : nodes_(std::move(nodes)), kind_(kind), adjacency_(nodes_.size()) {
  if (size() > NodeSet::kMaxSize) throw CapacityError("graph", size(), NodeSet::kMaxSize);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (std::find(nodes_.begin(), nodes_.begin() + i, nodes_[i]) != nodes_.begin() + i) {
      throw DomainError("duplicate node '" + nodes_[i] + "'");
    }
  }
}

int Graph::index_of(const std::string& label) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), label);
  if (it == nodes_.end()) throw DomainError("unknown node '" + label + "'");
  return static_cast<int>(it - nodes_.begin());
}

void Graph::add_edge(int i, int j) {
  if (i < 0 || j < 0 || i >= size() || j >= size()) throw DomainError("edge endpoint outside the node set");
  if (i == j) throw DomainError("self-loop at '" + nodes_[i] + "'");
  adjacency_[i] = adjacency_[i].with(j);
  adjacency_[j] = adjacency_[j].with(i);
}

void Graph::add_edge(const std::string& u, const std::string& v) { add_edge(index_of(u), index_of(v)); }

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i) {
    for (int j : adjacency_[i].elements()) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

NodeSet Graph::reachable(NodeSet from, NodeSet allowed) const {
  NodeSet seen = from & allowed;
  NodeSet frontier = seen;
  while (!frontier.empty()) {
    NodeSet next;
    for (int v : frontier.elements()) next = next | adjacency_[v];
    next = (next & allowed) - seen;
    seen = seen | next;
    frontier = next;
  }
  return seen;
}

std::vector<NodeSet> Graph::components(NodeSet within) const {
  std::vector<NodeSet> out;
  NodeSet left = within;
  while (!left.empty()) {
    const NodeSet comp = reachable(NodeSet::singleton(left.first()), within);
    out.push_back(comp);
    left = left - comp;
  }
  return out;
}

Graph build_bidirected(const SymMatrix& kernel, double tol_zero) {
  Graph g(kernel.labels(), GraphKind::bidirected);
  for (int i = 0; i < kernel.size(); ++i) {
    for (int j = i + 1; j < kernel.size(); ++j) {
      if (std::abs(kernel(i, j)) > tol_zero) g.add_edge(i, j);
    }
  }
  return g;
}

Eigen::MatrixXd scaled_inverse_residuals(const SymMatrix& kernel) {
  const Eigen::MatrixXd p = inverse(kernel.entries(), "K");
  const Eigen::VectorXd d = p.diagonal().cwiseAbs().cwiseSqrt();
  return p.cwiseAbs().cwiseQuotient(d * d.transpose());
}

Graph build_undirected(const SymMatrix& kernel, double tol_zero) {
  const Eigen::MatrixXd scaled = scaled_inverse_residuals(kernel);
  Graph g(kernel.labels(), GraphKind::undirected);
  for (int i = 0; i < kernel.size(); ++i) {
    for (int j = i + 1; j < kernel.size(); ++j) {
      if (scaled(i, j) > tol_zero) g.add_edge(i, j);
    }
  }
  return g;
}

namespace {

void require_separation_query(const Graph& g, NodeSet a, NodeSet b, NodeSet s) {
  require_disjoint(g.all(), a, b, s);
}

}  // namespace

bool u_separated(const Graph& g, NodeSet a, NodeSet b, NodeSet s) {
  if (g.kind() != GraphKind::undirected) throw DomainError("u-separation needs an undirected graph");
  require_separation_query(g, a, b, s);
  return g.reachable(a, g.all() - s).disjoint(b);
}

bool b_separated(const Graph& g, NodeSet a, NodeSet b, NodeSet s) {
  if (g.kind() != GraphKind::bidirected) throw DomainError("b-separation needs a bidirected graph");
  require_separation_query(g, a, b, s);
  return g.reachable(a, a | b | s).disjoint(b);
}

bool separated(const Graph& g, NodeSet a, NodeSet b, NodeSet s) {
  return g.kind() == GraphKind::undirected ? u_separated(g, a, b, s) : b_separated(g, a, b, s);
}

MarkovReport connected_set_markov(const DppModel& model, const Graph& g) {
  if (g.kind() != GraphKind::bidirected) throw DomainError("connected-set property needs a bidirected graph");
  if (g.nodes() != model.labels()) throw DomainError("graph nodes differ from the model's ground set");
  const JointTable table = joint_table(model);
  const auto& mass = table.masses();

  MarkovReport report{MarkovProperty::connected_set, true, {}};
  for_each_subset(model.all(), [&](NodeSet d) {
    if (d.size() < 2) return;
    const auto comps = g.components(d);
    if (comps.size() < 2) return;

    const double q_d = mobius(model, d);
    double q_prod = 1;
    for (NodeSet c : comps) q_prod *= mobius(model, c);
    if (std::abs(q_d - q_prod) > 1e-9 * std::max({std::abs(q_d), std::abs(q_prod), 1e-300})) {
      report.witnesses.push_back({Triple{d, {}, {}}, "mobius-factorization"});
      return;
    }

    std::vector<double> p_d(mass.size(), 0.0);
    for (NodeSet::Bits m = 0; m < mass.size(); ++m) p_d[m & d.bits()] += mass[m];
    bool ok = true;
    for_each_subset(d, [&](NodeSet x) {
      if (!ok) return;
      double prod = 1;
      for (NodeSet c : comps) {
        // P(X_C = x_C): sum over assignments of D \ C.
        double pc = 0;
        for_each_subset(d - c, [&](NodeSet rest) { pc += p_d[((x & c) | rest).bits()]; });
        prod *= pc;
      }
      if (std::abs(p_d[x.bits()] - prod) > 1e-9) ok = false;
    });
    if (!ok) report.witnesses.push_back({Triple{d, {}, {}}, "joint-factorization"});
  });
  report.holds = report.witnesses.empty();
  return report;
}

Graph skeleton(const JointTable& table, double atol) {
  if (table.size() > kMaxModelSize) throw CapacityError("skeleton", table.size(), kMaxModelSize);
  Graph g(table.labels(), GraphKind::undirected);
  for (int i = 0; i < table.size(); ++i) {
    for (int j = i + 1; j < table.size(); ++j) {
      const NodeSet ij = NodeSet::singleton(i).with(j);
      bool separable = false;
      for_each_subset(table.all() - ij, [&](NodeSet c) {
        if (!separable && ci_oracle(table, NodeSet::singleton(i), NodeSet::singleton(j), c, atol)) {
          separable = true;
        }
      });
      if (!separable) g.add_edge(i, j);
    }
  }
  return g;
}

namespace {

void require_same_ground(const IndependenceModel& model, const Graph& g) {
  if (model.ground() != g.nodes()) throw DomainError("statement ground set differs from graph nodes");
  if (g.size() > kMaxModelSize) throw CapacityError("Markov check", g.size(), kMaxModelSize);
}

}  // namespace

MarkovReport check_markov(const IndependenceModel& model, const Graph& g, MarkovLevel level) {
  require_same_ground(model, g);
  MarkovReport report;
  if (level == MarkovLevel::pairwise) {
    report.property = MarkovProperty::pairwise;
    for (int i = 0; i < g.size(); ++i) {
      for (int j = i + 1; j < g.size(); ++j) {
        if (g.adjacent(i, j)) continue;
        const NodeSet ij = NodeSet::singleton(i).with(j);
        const NodeSet cond = g.kind() == GraphKind::bidirected ? NodeSet{} : g.all() - ij;
        const Triple t{NodeSet::singleton(i), NodeSet::singleton(j), cond};
        if (!model.contains(t)) report.witnesses.push_back({t, "missing-statement"});
      }
    }
  } else {
    report.property = MarkovProperty::global;
    for_each_triple(g.all(), [&](const Triple& t) {
      if (separated(g, t.a, t.b, t.c) && !model.contains(t)) report.witnesses.push_back({t, "missing-statement"});
    });
  }
  report.holds = report.witnesses.empty();
  return report;
}

MarkovReport check_faithful(const IndependenceModel& model, const Graph& g) {
  require_same_ground(model, g);
  MarkovReport report{MarkovProperty::faithful, true, {}};
  for_each_triple(g.all(), [&](const Triple& t) {
    const bool sep = separated(g, t.a, t.b, t.c);
    const bool stated = model.contains(t);
    if (sep && !stated) report.witnesses.push_back({t, "missing-statement"});
    if (!sep && stated) report.witnesses.push_back({t, "unfaithful-statement"});
  });
  report.holds = report.witnesses.empty();
  return report;
}

}  // namespace dppmarkov
