#ifndef DPPMARKOV_IO_HPP
#define DPPMARKOV_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dppmarkov/axioms.hpp"
#include "dppmarkov/dpp_model.hpp"
#include "dppmarkov/graph.hpp"
#include "dppmarkov/independence.hpp"
#include "dppmarkov/linalg.hpp"

namespace dppmarkov::io {

/// Parses {"labels": [...], "matrix": [[...], ...]}. Errors are ParseError with line/column.
SymMatrix parse_kernel(std::string_view text, double tol_sym = 1e-9);
SymMatrix read_kernel_file(const std::filesystem::path& path, double tol_sym = 1e-9);
std::string kernel_to_json(const SymMatrix& kernel);

/// Graphviz text. Bidirected graphs carry kind="bidirected" at graph level and dir=both on edges.
std::string to_dot(const Graph& g, const std::string& name = "G");
/// Reads the subset of Graphviz produced by to_dot.
Graph parse_dot(std::string_view text);

/// Shortest round-tripping decimal form.
std::string format_real(double value);
/// "{1,3}" using the given labels.
std::string format_set(const std::vector<std::string>& labels, NodeSet set);
/// "<{1},{2}|{3}>".
std::string format_triple(const std::vector<std::string>& labels, const Triple& t);

nlohmann::ordered_json to_json(const ValidationReport& report);
nlohmann::ordered_json to_json(const CiVerdict& verdict);
nlohmann::ordered_json to_json(const JointTable& table);
nlohmann::ordered_json to_json(const MobiusParams& params);
nlohmann::ordered_json to_json(const Graph& g);
nlohmann::ordered_json to_json(const std::vector<std::string>& labels, const AxiomReport& report);
nlohmann::ordered_json to_json(const std::vector<std::string>& labels, const MarkovReport& report);

}  // namespace dppmarkov::io

#endif  // DPPMARKOV_IO_HPP
