#ifndef DPPMARKOV_GRAPH_HPP
#define DPPMARKOV_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include "dppmarkov/dpp_model.hpp"
#include "dppmarkov/independence.hpp"
#include "dppmarkov/node_set.hpp"
#include "dppmarkov/sym_matrix.hpp"

namespace dppmarkov {

enum class GraphKind { undirected, bidirected };

const char* to_string(GraphKind kind);

/// Simple graph over labeled nodes; adjacency is kept as one bitmask per node.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::string> nodes, GraphKind kind);

  const std::vector<std::string>& nodes() const { return nodes_; }
  GraphKind kind() const { return kind_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  NodeSet all() const { return NodeSet::full(size()); }

  void add_edge(int i, int j);
  void add_edge(const std::string& u, const std::string& v);
  bool adjacent(int i, int j) const { return adjacency_.at(i).contains(j); }
  NodeSet neighbors(int i) const { return adjacency_.at(i); }
  int index_of(const std::string& label) const;

  /// Edges (i, j) with i < j, ascending.
  std::vector<std::pair<int, int>> edges() const;

  /// Vertices reachable from `from` through vertices of `allowed` (from ∩ allowed included).
  NodeSet reachable(NodeSet from, NodeSet allowed) const;
  /// Connected components of the subgraph induced by `within`, ordered by smallest element.
  std::vector<NodeSet> components(NodeSet within) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::string> nodes_;
  GraphKind kind_ = GraphKind::undirected;
  std::vector<NodeSet> adjacency_;
};

/// G_b: edge i <-> j iff |K_ij| > tol_zero.
Graph build_bidirected(const SymMatrix& kernel, double tol_zero = 1e-9);

/// |K^-1_ij| / sqrt(K^-1_ii K^-1_jj); throws DegeneracyError for singular K.
Eigen::MatrixXd scaled_inverse_residuals(const SymMatrix& kernel);

/// G_u: edge i - j iff the scaled residual of K^-1 at (i, j) exceeds tol_zero.
Graph build_undirected(const SymMatrix& kernel, double tol_zero = 0.05);

/// S separates A from B: no path from A to B avoiding S.
bool u_separated(const Graph& g, NodeSet a, NodeSet b, NodeSet s);

/// Every path between A and B has a vertex outside S ∪ A ∪ B.
bool b_separated(const Graph& g, NodeSet a, NodeSet b, NodeSet s);

/// u_separated or b_separated according to the graph kind.
bool separated(const Graph& g, NodeSet a, NodeSet b, NodeSet s);

enum class MarkovProperty { pairwise, global, connected_set, faithful };
enum class MarkovLevel { pairwise, global };

const char* to_string(MarkovProperty property);

struct Witness {
  Triple statement;
  /// "missing-statement", "unfaithful-statement", "mobius-factorization" or "joint-factorization".
  std::string reason;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct MarkovReport {
  MarkovProperty property = MarkovProperty::global;
  bool holds = true;
  /// Sorted by statement. Connected-set witnesses carry the disconnected set D in statement.a.
  std::vector<Witness> witnesses;
};

/// For every D inducing a disconnected subgraph with components C_1..C_r, checks
/// q_D = prod q_{C_m} (relative 1e-9) and P(X_D = x_D) = prod P(X_{C_m} = x_{C_m}) (absolute 1e-9).
MarkovReport connected_set_markov(const DppModel& model, const Graph& g);

/// sk(P): i, j non-adjacent iff some C ⊆ V \ {i, j} gives i ⫫ j | C.
Graph skeleton(const JointTable& table, double atol = kOracleTolerance);

MarkovReport check_markov(const IndependenceModel& model, const Graph& g, MarkovLevel level);

/// Separations and statements must coincide exactly.
MarkovReport check_faithful(const IndependenceModel& model, const Graph& g);

}  // namespace dppmarkov

#endif  // DPPMARKOV_GRAPH_HPP
