#include "dppmarkov/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

namespace dppmarkov::io {

using nlohmann::ordered_json;

namespace {

struct Location {
  int line = 1;
  int column = 1;
};

Location location_of(std::string_view text, std::size_t offset) {
  Location loc;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

// Offset of the value under "matrix" -> [row] (-> [col] when col >= 0). Scans the raw text,
// skipping strings; returns npos if not found.
std::size_t find_matrix_element(std::string_view text, int row, int col) {
  const auto key = text.find("\"matrix\"");
  if (key == std::string_view::npos) return key;
  std::size_t i = text.find(':', key);
  if (i == std::string_view::npos) return i;
  ++i;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  const std::size_t matrix_start = i;
  if (i >= text.size() || text[i] != '[') return matrix_start;

  int depth = 0;
  int r = -1;
  int c = -1;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') continue;
    if (ch == '[') {
      ++depth;
      if (depth == 2) {
        ++r;
        c = -1;
        if (r == row && col < 0) return i;
      }
      continue;
    }
    if (ch == ']') {
      if (--depth == 0) return matrix_start;
      continue;
    }
    // A scalar or string token at the current depth.
    if (depth == 2) {
      ++c;
      if (r == row && c == col) return i;
    } else if (depth == 1) {
      ++r;
      if (r == row) return i;
    }
    if (ch == '"') {
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\') ++i;
      }
      continue;
    }
    while (i + 1 < text.size() && text[i + 1] != ',' && text[i + 1] != ']' && text[i + 1] != '[' &&
           !std::isspace(static_cast<unsigned char>(text[i + 1]))) {
      ++i;
    }
  }
  return matrix_start;
}

[[noreturn]] void fail_at(std::string_view text, std::size_t offset, const std::string& message) {
  const Location loc = location_of(text, offset == std::string_view::npos ? 0 : offset);
  throw ParseError(message, loc.line, loc.column);
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

std::string format_set(const std::vector<std::string>& labels, NodeSet set) {
  std::string out = "{";
  bool first = true;
  for (int i : set.elements()) {
    if (!first) out += ",";
    out += labels.at(i);
    first = false;
  }
  return out + "}";
}

std::string format_triple(const std::vector<std::string>& labels, const Triple& t) {
  return "<" + format_set(labels, t.a) + "," + format_set(labels, t.b) + "|" + format_set(labels, t.c) + ">";
}

SymMatrix parse_kernel(std::string_view text, double tol_sym) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    fail_at(text, offset, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail_at(text, 0, "kernel file must be a JSON object");
  if (!doc.contains("labels") || !doc["labels"].is_array()) fail_at(text, 0, "missing array field 'labels'");
  if (!doc.contains("matrix") || !doc["matrix"].is_array()) fail_at(text, 0, "missing array field 'matrix'");

  std::vector<std::string> labels;
  for (const auto& l : doc["labels"]) {
    if (l.is_string()) {
      labels.push_back(l.get<std::string>());
    } else if (l.is_number_integer()) {
      labels.push_back(std::to_string(l.get<long long>()));
    } else {
      fail_at(text, text.find("\"labels\""), "labels must be strings or integers");
    }
  }
  const auto& rows = doc["matrix"];
  const int n = static_cast<int>(labels.size());
  if (static_cast<int>(rows.size()) != n) {
    fail_at(text, find_matrix_element(text, -1, -1),
            "matrix has " + std::to_string(rows.size()) + " rows but there are " + std::to_string(n) + " labels");
  }
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    const auto& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      fail_at(text, find_matrix_element(text, r, -1),
              "matrix row " + std::to_string(r + 1) + " must have " + std::to_string(n) + " entries");
    }
    for (int c = 0; c < n; ++c) {
      if (!row[c].is_number()) {
        fail_at(text, find_matrix_element(text, r, c),
                "matrix entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") is not a number");
      }
      m(r, c) = row[c].get<double>();
    }
  }
  try {
    return SymMatrix(std::move(labels), std::move(m), tol_sym);
  } catch (const DomainError& e) {
    fail_at(text, find_matrix_element(text, -1, -1), e.what());
  }
}

SymMatrix read_kernel_file(const std::filesystem::path& path, double tol_sym) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'", 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kernel(buf.str(), tol_sym);
}

std::string kernel_to_json(const SymMatrix& kernel) {
  std::ostringstream out;
  out << "{\n  \"labels\": [";
  for (int i = 0; i < kernel.size(); ++i) out << (i ? ", " : "") << quote(kernel.labels()[i]);
  out << "],\n  \"matrix\": [\n";
  for (int i = 0; i < kernel.size(); ++i) {
    out << "    [";
    for (int j = 0; j < kernel.size(); ++j) out << (j ? ", " : "") << format_real(kernel(i, j));
    out << "]" << (i + 1 < kernel.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

std::string to_dot(const Graph& g, const std::string& name) {
  const bool bidirected = g.kind() == GraphKind::bidirected;
  std::ostringstream out;
  out << "graph " << quote(name) << " {\n";
  out << "  kind=" << quote(to_string(g.kind())) << ";\n";
  for (const auto& node : g.nodes()) out << "  " << quote(node) << ";\n";
  for (const auto& [i, j] : g.edges()) {
    out << "  " << quote(g.nodes()[i]) << " -- " << quote(g.nodes()[j]);
    if (bidirected) out << " [dir=both, kind=\"bidirected\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

Graph parse_dot(std::string_view text) {
  // Statements are ';'-terminated; identifiers may be bare or double-quoted.
  static const std::regex header(R"(^\s*graph\s+(?:"(?:[^"\\]|\\.)*"|[A-Za-z0-9_]+)?\s*\{)");
  static const std::regex kind_stmt(R"re(^\s*kind\s*=\s*"?(undirected|bidirected)"?\s*$)re");
  static const std::regex id_re(R"re(^\s*("(?:[^"\\]|\\.)*"|[A-Za-z0-9_.]+)\s*(?:\[.*\])?\s*$)re");
  static const std::regex edge_re(
      R"re(^\s*("(?:[^"\\]|\\.)*"|[A-Za-z0-9_.]+)\s*--\s*("(?:[^"\\]|\\.)*"|[A-Za-z0-9_.]+)\s*(?:\[.*\])?\s*$)re");

  const std::string s(text);
  std::smatch m;
  if (!std::regex_search(s, m, header)) throw ParseError("expected 'graph <name> {'", 1, 1);
  const auto close = s.rfind('}');
  if (close == std::string::npos) throw ParseError("missing closing '}'", 1, 1);
  const std::size_t body_start = static_cast<std::size_t>(m.position(0) + m.length(0));
  const std::string body = s.substr(body_start, close - body_start);

  auto unquote = [](std::string id) {
    if (id.size() >= 2 && id.front() == '"') {
      std::string out;
      for (std::size_t i = 1; i + 1 < id.size(); ++i) {
        if (id[i] == '\\' && i + 2 < id.size()) ++i;
        out += id[i];
      }
      return out;
    }
    return id;
  };

  GraphKind kind = GraphKind::undirected;
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto end = body.find(';', pos);
    if (end == std::string::npos) end = body.size();
    const std::string stmt = body.substr(pos, end - pos);
    const std::size_t stmt_offset = body_start + pos;
    pos = end + 1;
    if (stmt.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::smatch sm;
    if (std::regex_match(stmt, sm, kind_stmt)) {
      kind = sm[1] == "bidirected" ? GraphKind::bidirected : GraphKind::undirected;
    } else if (std::regex_match(stmt, sm, edge_re)) {
      edges.emplace_back(unquote(sm[1]), unquote(sm[2]));
    } else if (std::regex_match(stmt, sm, id_re)) {
      const std::string id = unquote(sm[1]);
      if (std::find(nodes.begin(), nodes.end(), id) == nodes.end()) nodes.push_back(id);
    } else {
      const Location loc = location_of(text, stmt_offset + stmt.find_first_not_of(" \t\r\n"));
      throw ParseError("unrecognized statement", loc.line, loc.column);
    }
  }
  for (const auto& [u, v] : edges) {
    for (const auto& id : {u, v}) {
      if (std::find(nodes.begin(), nodes.end(), id) == nodes.end()) nodes.push_back(id);
    }
  }
  Graph g(nodes, kind);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

ordered_json to_json(const ValidationReport& report) {
  return {{"is_valid_kernel", report.is_valid_kernel},
          {"min_eigenvalue", report.min_eigenvalue},
          {"max_eigenvalue", report.max_eigenvalue},
          {"symmetry_defect", report.symmetry_defect},
          {"violations", report.violations}};
}

ordered_json to_json(const CiVerdict& verdict) {
  ordered_json residuals = ordered_json::object();
  for (const auto& [name, r] : verdict.residuals) residuals[name] = r;
  return {{"independent", verdict.independent},
          {"residuals", residuals},
          {"det_identity_absolute", verdict.det_identity_absolute},
          {"tolerance_used", verdict.tolerance_used},
          {"consistent", verdict.consistent},
          {"ambiguous", verdict.ambiguous}};
}

ordered_json to_json(const JointTable& table) {
  ordered_json masses = ordered_json::array();
  for (std::size_t m = 0; m < table.masses().size(); ++m) {
    std::string bits;
    for (int i = 0; i < table.size(); ++i) bits += ((m >> i) & 1U) ? '1' : '0';
    masses.push_back({{"assignment", bits}, {"mass", table.masses()[m]}});
  }
  return {{"labels", table.labels()}, {"masses", masses}, {"warnings", table.warnings()}};
}

ordered_json to_json(const MobiusParams& params) {
  ordered_json q = ordered_json::array();
  for (std::size_t m = 0; m < params.q.size(); ++m) {
    q.push_back({{"set", format_set(params.labels, NodeSet(static_cast<NodeSet::Bits>(m)))}, {"q", params.q[m]}});
  }
  return {{"labels", params.labels}, {"mobius", q}, {"warnings", params.warnings}};
}

ordered_json to_json(const Graph& g) {
  ordered_json edges = ordered_json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back({g.nodes()[i], g.nodes()[j]});
  return {{"kind", to_string(g.kind())}, {"nodes", g.nodes()}, {"edges", edges}};
}

ordered_json to_json(const std::vector<std::string>& labels, const AxiomReport& report) {
  ordered_json out = {{"axiom", std::string(to_string(report.axiom))}, {"holds", report.holds}};
  if (report.counterexample) {
    ordered_json premises = ordered_json::array();
    ordered_json missing = ordered_json::array();
    for (const auto& t : report.counterexample->premises) premises.push_back(format_triple(labels, t));
    for (const auto& t : report.counterexample->missing) missing.push_back(format_triple(labels, t));
    ordered_json cx = {{"premises", premises}, {"missing", missing}};
    if (report.counterexample->k) cx["k"] = labels.at(*report.counterexample->k);
    out["counterexample"] = cx;
  }
  return out;
}

ordered_json to_json(const std::vector<std::string>& labels, const MarkovReport& report) {
  ordered_json witnesses = ordered_json::array();
  for (const auto& w : report.witnesses) {
    witnesses.push_back({{"statement", format_triple(labels, w.statement)}, {"reason", w.reason}});
  }
  return {{"property", to_string(report.property)}, {"holds", report.holds}, {"witnesses", witnesses}};
}

}  // namespace dppmarkov::io
