#ifndef DPPMARKOV_TOOLS_COMMANDS_HPP
#define DPPMARKOV_TOOLS_COMMANDS_HPP

#include <optional>
#include <ostream>

#include <json.hpp>

#include "dppmarkov/independence.hpp"

namespace dppmarkov::cli {

struct RunConfig {
  /// Unset means the kind-dependent default (1e-9 on K, 0.05 on the scaled inverse).
  std::optional<double> tol_zero;
  double tol_ci = kDefaultCiTolerance;
};

/// Pinned reproductions; returns the exit code and fills `doc` with the items.
int paper_repro(const RunConfig& config, std::ostream& out, nlohmann::ordered_json& doc);

}  // namespace dppmarkov::cli

#endif  // DPPMARKOV_TOOLS_COMMANDS_HPP
