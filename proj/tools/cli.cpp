#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "commands.hpp"
#include "dppmarkov/axioms.hpp"
#include "dppmarkov/graph.hpp"
#include "dppmarkov/io.hpp"
#include "dppmarkov/random_kernel.hpp"

namespace dppmarkov::cli {

using nlohmann::ordered_json;

namespace {

constexpr double kGraphZeroTolerance = 1e-9;
constexpr double kScaledInverseTolerance = 0.05;
// Violations that vanish when decisions are exact up to rounding are reported as near-threshold.
constexpr double kStrictTolerance = 1e-12;

struct Result {
  int code = kExitOk;
  ordered_json doc;
  /// Written instead of doc.dump() when set (graph export).
  std::optional<std::string> raw;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Invalid kernels are a semantic failure, so commands that need a model check first.
std::optional<Result> reject_invalid(const SymMatrix& kernel, std::ostream& out) {
  const auto report = validate_kernel(kernel);
  if (report.is_valid_kernel) return std::nullopt;
  out << "invalid kernel\n";
  for (const auto& v : report.violations) out << "  " << v << "\n";
  return Result{kExitFailure, ordered_json{{"validation", io::to_json(report)}}, std::nullopt};
}

Result cmd_validate(const std::string& path, std::ostream& out) {
  const auto kernel = io::read_kernel_file(path);
  const auto report = validate_kernel(kernel);
  out << "valid kernel: " << yes_no(report.is_valid_kernel) << "\n";
  out << "eigenvalues: [" << io::format_real(report.min_eigenvalue) << ", " << io::format_real(report.max_eigenvalue)
      << "]\n";
  out << "symmetry defect: " << io::format_real(report.symmetry_defect) << "\n";
  for (const auto& v : report.violations) out << "violation: " << v << "\n";
  return {report.is_valid_kernel ? kExitOk : kExitFailure, io::to_json(report), std::nullopt};
}

Result cmd_dist(const std::string& path, std::ostream& out) {
  const auto kernel = io::read_kernel_file(path);
  if (auto bad = reject_invalid(kernel, out)) return *bad;
  if (kernel.size() > kMaxJointTableSize) throw CapacityError("dist", kernel.size(), kMaxJointTableSize);
  const DppModel model(kernel);
  const auto params = all_mobius(model);
  const auto table = joint_table(model);
  const auto& labels = kernel.labels();

  out << "mobius parameters q_A = det(K_A)\n";
  for (std::size_t m = 0; m < params.q.size(); ++m) {
    out << "  " << io::format_set(labels, NodeSet(static_cast<NodeSet::Bits>(m))) << "  "
        << io::format_real(params.q[m]) << "\n";
  }
  out << "joint distribution P(Y = A)\n";
  for (std::size_t m = 0; m < table.masses().size(); ++m) {
    out << "  " << io::format_set(labels, NodeSet(static_cast<NodeSet::Bits>(m))) << "  "
        << io::format_real(table.masses()[m]) << "\n";
  }
  for (const auto& w : params.warnings) out << "warning: " << w << "\n";
  for (const auto& w : table.warnings()) out << "warning: " << w << "\n";
  return {kExitOk, ordered_json{{"mobius", io::to_json(params)}, {"joint", io::to_json(table)}}, std::nullopt};
}

Result cmd_graph(const std::string& path, const std::string& kind, const RunConfig& config, std::ostream& out) {
  const auto kernel = io::read_kernel_file(path);
  if (auto bad = reject_invalid(kernel, out)) return *bad;
  const Graph g = kind == "bidirected" ? build_bidirected(kernel, config.tol_zero.value_or(kGraphZeroTolerance))
                                       : build_undirected(kernel, config.tol_zero.value_or(kScaledInverseTolerance));
  const std::string dot = io::to_dot(g, kind == "bidirected" ? "G_b" : "G_u");
  out << dot;
  return {kExitOk, io::to_json(g), dot};
}

Result cmd_ci(const std::string& path, const std::vector<std::string>& a, const std::vector<std::string>& b,
              const std::vector<std::string>& c, const std::string& context, const RunConfig& config,
              std::ostream& out) {
  const auto kernel = io::read_kernel_file(path);
  if (auto bad = reject_invalid(kernel, out)) return *bad;
  const NodeSet sa = kernel.select(a);
  const NodeSet sb = kernel.select(b);
  const NodeSet sc = kernel.select(c);
  require_disjoint(kernel.all(), sa, sb, sc);
  const DppModel model(kernel);
  const auto& labels = kernel.labels();
  const std::string query = io::format_triple(labels, Triple{sa, sb, sc});

  if (context == "general") {
    if (kernel.size() > kMaxJointTableSize) throw CapacityError("ci", kernel.size(), kMaxJointTableSize);
    const bool independent = ci_oracle(joint_table(model), sa, sb, sc);
    out << query << " general: " << (independent ? "independent" : "dependent") << "\n";
    return {kExitOk,
            ordered_json{{"query", query}, {"context", context}, {"independent", independent},
                         {"oracle_tolerance", kOracleTolerance}},
            std::nullopt};
  }
  const Context ctx = context == "ones" ? Context::ones : Context::zeros;
  const auto verdict = ci_context(model, sa, sb, sc, ctx, config.tol_ci);
  out << query << " context " << context << ": " << (verdict.independent ? "independent" : "dependent") << "\n";
  for (const auto& [name, r] : verdict.residuals) out << "  " << name << " residual " << io::format_real(r) << "\n";
  out << "  det-identity absolute " << io::format_real(verdict.det_identity_absolute) << "\n";
  out << "  tolerance " << io::format_real(verdict.tolerance_used) << "\n";
  if (!verdict.consistent) out << "  warning: residuals disagree" << (verdict.ambiguous ? " (ambiguous band)" : "") << "\n";
  ordered_json doc{{"query", query}, {"context", context}};
  doc["verdict"] = io::to_json(verdict);
  return {kExitOk, doc, std::nullopt};
}

// Properties proven for every DPP; a violation makes the audit fail.
bool guaranteed(const IndependenceModel& model, Axiom axiom) {
  if (!model.context()) {
    return axiom == Axiom::symmetry || axiom == Axiom::decomposition || axiom == Axiom::weak_union ||
           axiom == Axiom::contraction || axiom == Axiom::composition || axiom == Axiom::singleton_transitivity;
  }
  return axiom == Axiom::intersection || axiom == Axiom::composition || axiom == Axiom::singleton_transitivity;
}

ordered_json audit_one(const SymMatrix& kernel, const RunConfig& config, std::ostream& out, bool& violated) {
  if (kernel.size() > kMaxModelSize) throw CapacityError("audit", kernel.size(), kMaxModelSize);
  const DppModel model(kernel);
  const auto& labels = kernel.labels();
  const auto table = joint_table(model);

  struct Named {
    const char* name;
    IndependenceModel model;
  };
  const std::vector<Named> models = {
      {"plain", enumerate_model(table)},
      {"context-ones", enumerate_context_model(model, Context::ones, config.tol_ci)},
      {"context-zeros", enumerate_context_model(model, Context::zeros, config.tol_ci)},
  };

  ordered_json doc{{"labels", labels}};
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const auto& [name, m] = models[mi];
    std::optional<IndependenceModel> strict;
    ordered_json reports = ordered_json::array();
    out << "  " << name << " model: " << m.statements().size() << " statements\n";
    for (const auto& r : audit_model(m)) {
      bool near_threshold = false;
      if (!r.holds && guaranteed(m, r.axiom)) {
        if (!strict) {
          strict = m.context() ? enumerate_context_model(model, *m.context(), std::min(config.tol_ci, kStrictTolerance))
                               : enumerate_model(table, kStrictTolerance);
        }
        near_threshold = check_axiom(*strict, r.axiom).holds;
      }
      out << "    " << to_string(r.axiom) << ": " << (r.holds ? "holds" : "fails");
      if (r.counterexample) {
        const auto& cx = *r.counterexample;
        out << "  witness";
        for (const auto& t : cx.premises) out << " " << io::format_triple(labels, t);
        out << " without";
        for (const auto& t : cx.missing) out << " " << io::format_triple(labels, t);
      }
      if (near_threshold) out << "  (near threshold: holds at " << io::format_real(kStrictTolerance) << ")";
      out << "\n";
      if (!r.holds && guaranteed(m, r.axiom) && !near_threshold) violated = true;
      auto entry = io::to_json(labels, r);
      if (near_threshold) entry["near_threshold"] = true;
      reports.push_back(entry);
    }
    doc["axioms"][name] = reports;
  }

  const Graph gb = build_bidirected(kernel, config.tol_zero.value_or(kGraphZeroTolerance));
  const Graph gu = build_undirected(kernel, kScaledInverseTolerance);
  auto markov_line = [&](const std::string& what, const MarkovReport& r) {
    out << "    " << what << ": " << (r.holds ? "holds" : "fails");
    if (!r.witnesses.empty()) {
      const auto& w = r.witnesses.front();
      out << "  " << w.reason << " " << io::format_triple(labels, w.statement);
      if (r.witnesses.size() > 1) out << " (+" << r.witnesses.size() - 1 << " more)";
    }
    out << "\n";
    return io::to_json(labels, r);
  };
  out << "  graphs: G_b " << gb.edges().size() << " edges, G_u " << gu.edges().size() << " edges\n";
  const auto gb_global = check_markov(models[0].model, gb, MarkovLevel::global);
  const auto gb_sets = connected_set_markov(model, gb);
  if (!gb_global.holds || !gb_sets.holds) violated = true;
  doc["markov"]["plain-G_b-global"] = markov_line("plain vs G_b global", gb_global);
  doc["markov"]["G_b-connected-set"] = markov_line("G_b connected-set", gb_sets);
  doc["markov"]["plain-G_b-faithful"] = markov_line("plain vs G_b faithful", check_faithful(models[0].model, gb));
  doc["markov"]["ones-G_u-global"] =
      markov_line("context-ones vs G_u global", check_markov(models[1].model, gu, MarkovLevel::global));
  doc["markov"]["ones-G_u-faithful"] = markov_line("context-ones vs G_u faithful", check_faithful(models[1].model, gu));
  return doc;
}

Result cmd_audit(const std::optional<std::string>& path, bool random, int n, std::uint64_t seed, int count,
                 const RunConfig& config, std::ostream& out) {
  std::vector<SymMatrix> kernels;
  if (path) {
    kernels.push_back(io::read_kernel_file(*path));
    if (auto bad = reject_invalid(kernels.front(), out)) return *bad;
  } else if (random) {
    if (n < 1 || count < 1) throw DomainError("--n and --count must be positive");
    if (n > kMaxModelSize) throw CapacityError("audit", n, kMaxModelSize);
    kernels = kernel_ensemble(seed, count, n, n);
  } else {
    throw DomainError("audit needs a kernel file or --random");
  }

  bool violated = false;
  ordered_json doc = ordered_json::array();
  for (std::size_t i = 0; i < kernels.size(); ++i) {
    out << "kernel " << i + 1 << " (n = " << kernels[i].size() << ")\n";
    doc.push_back(audit_one(kernels[i], config, out, violated));
  }
  out << (violated ? "audit: guaranteed property violated\n" : "audit: no violations of guaranteed properties\n");
  return {violated ? kExitFailure : kExitOk, doc, std::nullopt};
}

void write_output(const std::string& path, const Result& result) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot write '" + path + "'", 0, 0);
  if (result.raw) {
    file << *result.raw;
  } else {
    file << result.doc.dump(2) << "\n";
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Independence models of discrete determinantal point processes", "dppmarkov"};
  app.require_subcommand(1);

  RunConfig config;
  double tol_zero = 0;
  std::string out_path;
  auto* tol_zero_opt = app.add_option("--tol-zero", tol_zero, "Structural zero tolerance")
                           ->check(CLI::PositiveNumber);
  app.add_option("--tol-ci", config.tol_ci, "Independence residual tolerance")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Write a JSON report (DOT for graph) to this path");

  std::string file;
  auto* validate = app.add_subcommand("validate", "Check that a kernel file holds a valid marginal kernel");
  validate->add_option("file", file)->required();

  auto* dist = app.add_subcommand("dist", "Print Mobius parameters and the joint distribution");
  dist->add_option("file", file)->required();

  std::string kind;
  auto* graph = app.add_subcommand("graph", "Export G_b (zeros of K) or G_u (zeros of K^-1) as DOT");
  graph->add_option("file", file)->required();
  graph->add_option("--kind", kind)->required()->check(CLI::IsMember({"bidirected", "undirected"}));

  std::vector<std::string> a, b, c;
  std::string context = "ones";
  auto* ci = app.add_subcommand("ci", "Conditional independence query");
  ci->add_option("file", file)->required();
  ci->add_option("--a", a)->required()->delimiter(',');
  ci->add_option("--b", b)->required()->delimiter(',');
  ci->add_option("--c", c)->delimiter(',');
  ci->add_option("--context", context)->check(CLI::IsMember({"ones", "zeros", "general"}));

  bool random = false;
  int n = 4;
  std::uint64_t seed = 1;
  int count = 10;
  auto* audit = app.add_subcommand("audit", "Audit axioms, Markov properties and faithfulness");
  auto* audit_file = audit->add_option("file", file);
  auto* random_flag = audit->add_flag("--random", random, "Audit seeded random kernels");
  audit->add_option("--n", n);
  audit->add_option("--seed", seed);
  audit->add_option("--count", count);
  audit_file->excludes(random_flag);

  auto* repro = app.add_subcommand("paper-repro", "Run the pinned worked examples");

  for (auto* sub : {validate, dist, graph, ci, audit, repro}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (tol_zero_opt->count() > 0) config.tol_zero = tol_zero;

  try {
    Result result;
    if (validate->parsed()) {
      result = cmd_validate(file, out);
    } else if (dist->parsed()) {
      result = cmd_dist(file, out);
    } else if (graph->parsed()) {
      result = cmd_graph(file, kind, config, out);
    } else if (ci->parsed()) {
      result = cmd_ci(file, a, b, c, context, config, out);
    } else if (audit->parsed()) {
      result = cmd_audit(audit_file->count() > 0 ? std::optional<std::string>(file) : std::nullopt, random, n, seed,
                         count, config, out);
    } else {
      result.code = paper_repro(config, out, result.doc);
    }
    if (!out_path.empty()) write_output(out_path, result);
    return result.code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const DegeneracyError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const NullEvidenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const UndefinedCorrelationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace dppmarkov::cli
