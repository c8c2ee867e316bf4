#include "lpres/runner.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>

#include <nlohmann/json.hpp>

namespace lpres {

namespace {

namespace fs = std::filesystem;

HarnessHooks hooks_from_env() {
  HarnessHooks hooks;
  if (const char* env = std::getenv("LPRES_TEST_M_OVERRIDE")) {
    hooks.m_override = std::stod(env);
  }
  return hooks;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string details_string(const InequalityReport& report) {
  std::string out;
  for (const auto& [key, value] : report.details) {  // std::map: sorted, stable
    if (!out.empty()) out += ";";
    out += key + "=" + value;
  }
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file " + path.string());
  }
  out << content;
}

// Builds the per-name check thunks; holder_T fans out over r_values.
std::vector<std::pair<std::string, std::function<InequalityReport()>>>
make_tasks(const RunConfig& config, const SpaceDescriptor& space,
           const HarnessHooks& hooks) {
  std::vector<std::pair<std::string, std::function<InequalityReport()>>> tasks;
  for (const auto& name : expand_checks(config.checks)) {
    if (name == "phi_identity") {
      tasks.emplace_back(name, [=] { return check_phi_identity(space, config.sampler); });
    } else if (name == "estimate_mu") {
      tasks.emplace_back(name, [=] { return estimate_mu(space, config.sampler); });
    } else if (name == "strong_monotonicity") {
      tasks.emplace_back(name,
                         [=] { return check_strong_monotonicity(space, config.sampler); });
    } else if (name == "support_inequality") {
      tasks.emplace_back(name,
                         [=] { return check_support_inequality(space, config.sampler); });
    } else if (name == "keylem1") {
      tasks.emplace_back(name, [=] { return check_keylem1(space, config.sampler); });
    } else if (name == "normalization_inequality") {
      tasks.emplace_back(
          name, [=] { return check_normalization_inequality(space, config.sampler); });
    } else if (name == "theorem_main1") {
      tasks.emplace_back(name,
                         [=] { return check_theorem_main1(space, config.sampler, hooks); });
    } else if (name == "holder_T") {
      for (double r : config.r_values) {
        std::string task_name = "holder_T_r" + format_double(r);
        RunConfig cfg = config;
        tasks.emplace_back(task_name, [=] {
          InequalityReport rep = check_holder_T(space, cfg.op, r, cfg.sampler, hooks);
          rep.check_name = task_name;
          return rep;
        });
      }
    } else if (name == "monotonicity") {
      RunConfig cfg = config;
      tasks.emplace_back(name, [=] {
        return monotonicity_certificate(cfg.op, space, cfg.sampler);
      });
    } else if (name.rfind("adversarial_", 0) == 0) {
      std::string id = name.substr(std::string("adversarial_").size());
      if ((id == "main1" || id == "keylem1") && !space.theorem_regime()) {
        continue;  // outside the theorem regime these ratios are undefined
      }
      tasks.emplace_back(name, [=] {
        InequalityReport rep = adversarial_search(id, space, 100, 200, config.sampler);
        rep.check_name = name;
        return rep;
      });
    }
  }
  return tasks;
}

}  // namespace

std::string report_to_csv(const InequalityReport& report) {
  std::ostringstream out;
  out << "check_name,samples,violations,worst_margin,estimated_constant,details\n";
  out << csv_escape(report.check_name) << "," << report.samples << ","
      << report.violations << "," << format_double(report.worst_margin) << ","
      << (report.estimated_constant ? format_double(*report.estimated_constant) : "")
      << "," << csv_escape(details_string(report)) << "\n";
  return out.str();
}

std::string report_to_json(const InequalityReport& report) {
  nlohmann::ordered_json j;
  j["check_name"] = report.check_name;
  j["samples"] = report.samples;
  j["violations"] = report.violations;
  j["worst_margin"] = report.worst_margin;
  if (report.estimated_constant) {
    j["estimated_constant"] = *report.estimated_constant;
  } else {
    j["estimated_constant"] = nullptr;
  }
  j["details"] = report.details;
  return j.dump(2) + "\n";
}

RunResult run_checks(const RunConfig& config) {
  SpaceDescriptor space = SpaceDescriptor::lp(config.dim, config.p);
  config.op.validate(space);
  HarnessHooks hooks = hooks_from_env();
  auto tasks = make_tasks(config, space, hooks);

  RunResult result;
  result.reports.resize(tasks.size());
  if (config.jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      result.reports[i] = tasks[i].second();
    }
  } else {
    // fan out; the merge order is the task order, so completion order is
    // irrelevant to the output
    std::vector<std::future<InequalityReport>> futures;
    futures.reserve(tasks.size());
    for (auto& [name, thunk] : tasks) {
      futures.push_back(std::async(std::launch::async, thunk));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) {
      result.reports[i] = futures[i].get();
    }
  }
  for (const auto& report : result.reports) {
    if (report.violations > 0) result.exit_code = 2;
  }
  return result;
}

RunResult run(const RunConfig& config) {
  RunResult result = run_checks(config);

  std::string out_dir = config.output_dir;
  if (const char* env = std::getenv("LPRES_OUTPUT_DIR")) {
    out_dir = env;
  }
  fs::create_directories(out_dir);

  const bool json = config.format == OutputFormat::json;
  for (const auto& report : result.reports) {
    fs::path file = fs::path(out_dir) / (report.check_name + (json ? ".json" : ".csv"));
    write_file(file, json ? report_to_json(report) : report_to_csv(report));
  }

  if (json) {
    nlohmann::ordered_json summary;
    summary["seed"] = config.sampler.seed;
    summary["mu_convention"] = "mu = 2*mu_hat";
    summary["rho_ceiling"] = "analytic (sqrt(1+tau^2)-1 at p=2, tau^p/p otherwise)";
    summary["exit_code"] = result.exit_code;
    nlohmann::ordered_json checks;
    for (const auto& report : result.reports) {
      checks[report.check_name] = report.violations == 0 ? "pass" : "fail";
    }
    summary["checks"] = checks;
    write_file(fs::path(out_dir) / "summary.json", summary.dump(2) + "\n");
  } else {
    std::ostringstream summary;
    summary << "key,value\n";
    summary << "seed," << config.sampler.seed << "\n";
    summary << "mu_convention,mu = 2*mu_hat\n";
    summary << "rho_ceiling,analytic (sqrt(1+tau^2)-1 at p=2; tau^p/p otherwise)\n";
    summary << "exit_code," << result.exit_code << "\n";
    for (const auto& report : result.reports) {
      summary << "check." << report.check_name << ","
              << (report.violations == 0 ? "pass" : "fail") << "\n";
    }
    write_file(fs::path(out_dir) / "summary.csv", summary.str());
  }
  return result;
}

void emit_plot_data(const RunConfig& config, const std::string& out_dir) {
  SpaceDescriptor space = SpaceDescriptor::lp(config.dim, config.p);
  fs::create_directories(out_dir);
  auto write_points = [&](const std::string& name, const HolderFitData& data) {
    std::ostringstream out;
    out << "base_point_id,log10_dist,log10_image_dist,bound_value\n";
    for (const auto& row : data.points) {
      out << std::int64_t(row[0]) << "," << format_double(row[1]) << ","
          << format_double(row[2]) << "," << format_double(row[3]) << "\n";
    }
    write_file(fs::path(out_dir) / (name + ".csv"), out.str());
  };
  write_points("fit_duality",
               fit_holder_exponent(MapUnderTest::duality, space, config.op, 1.0,
                                   config.sampler));
  for (double r : config.r_values) {
    write_points("fit_resolvent_r" + format_double(r),
                 fit_holder_exponent(MapUnderTest::resolvent, space, config.op, r,
                                     config.sampler));
  }
}

}  // namespace lpres
