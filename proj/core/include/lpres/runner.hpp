#pragma once

#include <string>
#include <vector>

#include "lpres/config.hpp"
#include "lpres/harness.hpp"
#include "lpres/report.hpp"

namespace lpres {

struct RunResult {
  int exit_code = 0;  // 0 pass, 2 re-verified violation, 1 operational error
  std::vector<InequalityReport> reports;  // merged in canonical check order
};

/// Executes the requested checks and writes one report file per check plus a
/// summary file into the output directory.  The LPRES_OUTPUT_DIR environment
/// variable overrides config.output_dir; LPRES_TEST_M_OVERRIDE (test hook)
/// overrides the theorem constant M.
RunResult run(const RunConfig& config);

/// Runs the checks without touching the filesystem.
RunResult run_checks(const RunConfig& config);

/// CSV point clouds for the Hoelder fits: one file per map under test with
/// header base_point_id,log10_dist,log10_image_dist,bound_value.
void emit_plot_data(const RunConfig& config, const std::string& out_dir);

std::string report_to_csv(const InequalityReport& report);
std::string report_to_json(const InequalityReport& report);

}  // namespace lpres
