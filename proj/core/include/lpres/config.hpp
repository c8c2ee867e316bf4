#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lpres/operators.hpp"
#include "lpres/sampler.hpp"

namespace lpres {

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
};

enum class OutputFormat { csv, json };

/// Full run description.  Parse-time validation mirrors the module
/// invariants; unknown keys are a hard parse error.
struct RunConfig {
  std::size_t dim = 2;
  double p = 2.0;
  MonotoneOperatorSpec op;  // multiple [operator] sections are summed
  std::vector<double> r_values = {1.0};
  SamplerConfig sampler;
  std::vector<std::string> checks = {"all"};
  std::string output_dir = "lpres-out";
  OutputFormat format = OutputFormat::csv;
  int jobs = 1;
};

/// Check names in their canonical (report merge) order.
const std::vector<std::string>& known_checks();

/// Expands "all" and validates the requested names.
std::vector<std::string> expand_checks(const std::vector<std::string>& requested);

RunConfig parse_config(const std::string& text);

/// Canonical text form; parse(serialize(c)) reproduces c.
std::string serialize_config(const RunConfig& config);

}  // namespace lpres
