#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lpres/config.hpp"
#include "lpres/moduli.hpp"
#include "lpres/runner.hpp"

namespace {

lpres::RunConfig load_config(const std::string& path) {
  if (path.empty()) {
    return lpres::RunConfig{};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read config file " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return lpres::parse_config(text.str());
}

struct CommonFlags {
  std::string config_path;
  std::int64_t seed = -1;
  std::string out_dir;
  std::string format;
  int jobs = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "run configuration file");
    cmd->add_option("--seed", seed, "override the config seed");
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--format", format, "report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--jobs", jobs, "worker count for independent checks");
  }

  lpres::RunConfig resolve() const {
    lpres::RunConfig config = load_config(config_path);
    if (seed >= 0) config.sampler.seed = std::uint64_t(seed);
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (format == "csv") config.format = lpres::OutputFormat::csv;
    if (format == "json") config.format = lpres::OutputFormat::json;
    if (jobs > 0) config.jobs = jobs;
    return config;
  }
};

int cmd_verify(const CommonFlags& flags) {
  lpres::RunConfig config = flags.resolve();
  lpres::RunResult result = lpres::run(config);
  for (const auto& report : result.reports) {
    std::cout << (report.violations == 0 ? "[PASS] " : "[FAIL] ")
              << report.check_name << " samples=" << report.samples
              << " worst_margin=" << lpres::format_double(report.worst_margin)
              << "\n";
  }
  return result.exit_code;
}

int cmd_resolve(const CommonFlags& flags, double r, const std::string& x_text) {
  lpres::RunConfig config = flags.resolve();
  lpres::SpaceDescriptor space = lpres::SpaceDescriptor::lp(config.dim, config.p);
  std::vector<double> coords;
  std::istringstream in(x_text);
  double value;
  while (in >> value) coords.push_back(value);
  if (coords.size() != space.dim) {
    std::cerr << "error: expected " << space.dim << " coordinates for x\n";
    return 1;
  }
  if (r <= 0.0) r = config.r_values.front();
  lpres::ResolventProblem problem{space, config.op, r,
                                  lpres::PrimalVector(coords, space), 1e-10, 200};
  lpres::ResolventSolution sol = lpres::solve_resolvent(problem);
  std::cout << "z =";
  for (double c : sol.z.coords) std::cout << " " << lpres::format_double(c);
  std::cout << "\nresidual = " << lpres::format_double(sol.residual)
            << "\nmethod = " << lpres::to_string(sol.method)
            << "\niterations = " << sol.iterations << "\n";
  return 0;
}

int cmd_moduli(const CommonFlags& flags, std::vector<double> tau_grid,
               std::vector<double> eps_grid) {
  lpres::RunConfig config = flags.resolve();
  lpres::SpaceDescriptor space = lpres::SpaceDescriptor::lp(config.dim, config.p);
  if (tau_grid.empty()) tau_grid = {0.05, 0.1, 0.25, 0.5, 1.0, 2.0};
  if (eps_grid.empty()) eps_grid = {0.25, 0.5, 1.0, 1.5, 2.0};
  std::cout << "kind,argument,estimate,ceiling\n";
  double running = 0.0;  // rho is nondecreasing; report the running max
  for (double tau : tau_grid) {
    running = std::max(running,
                       lpres::modulus_smoothness_estimate(space, tau, config.sampler));
    std::cout << "rho," << lpres::format_double(tau) << ","
              << lpres::format_double(running) << ","
              << lpres::format_double(lpres::rho_ceiling(space, tau)) << "\n";
  }
  for (double eps : eps_grid) {
    std::cout << "delta," << lpres::format_double(eps) << ","
              << lpres::format_double(
                     lpres::modulus_convexity_estimate(space, eps, config.sampler))
              << "," << (space.p == 2.0
                             ? lpres::format_double(lpres::delta_hilbert(eps))
                             : std::string(""))
              << "\n";
  }
  std::cout << "K_est,,"
            << lpres::format_double(lpres::smoothness_constant_estimate(
                   space, tau_grid, config.sampler))
            << ",\n";
  return 0;
}

int cmd_fit(const CommonFlags& flags) {
  lpres::RunConfig config = flags.resolve();
  std::string out_dir = config.output_dir;
  if (const char* env = std::getenv("LPRES_OUTPUT_DIR")) out_dir = env;
  lpres::emit_plot_data(config, out_dir);
  lpres::SpaceDescriptor space = lpres::SpaceDescriptor::lp(config.dim, config.p);
  auto data = lpres::fit_holder_exponent(lpres::MapUnderTest::duality, space,
                                         config.op, 1.0, config.sampler);
  std::cout << "map,slope,intercept,r_squared,n_pairs,worst_excess\n";
  std::cout << "J," << lpres::format_double(data.fit.slope) << ","
            << lpres::format_double(data.fit.intercept) << ","
            << lpres::format_double(data.fit.r_squared) << "," << data.fit.n_pairs
            << "," << lpres::format_double(data.worst_excess) << "\n";
  for (double r : config.r_values) {
    auto rd = lpres::fit_holder_exponent(lpres::MapUnderTest::resolvent, space,
                                         config.op, r, config.sampler);
    std::cout << "J_r=" << lpres::format_double(r) << ","
              << lpres::format_double(rd.fit.slope) << ","
              << lpres::format_double(rd.fit.intercept) << ","
              << lpres::format_double(rd.fit.r_squared) << "," << rd.fit.n_pairs
              << "," << lpres::format_double(rd.worst_excess) << "\n";
  }
  return 0;
}

int cmd_search(const CommonFlags& flags, const std::string& inequality, int restarts,
               int steps) {
  lpres::RunConfig config = flags.resolve();
  lpres::SpaceDescriptor space = lpres::SpaceDescriptor::lp(config.dim, config.p);
  lpres::InequalityReport report =
      lpres::adversarial_search(inequality, space, restarts, steps, config.sampler);
  std::cout << report.check_name << " best_ratio="
            << lpres::format_double(*report.estimated_constant)
            << " threshold=" << report.details.at("threshold")
            << "\nwitness_x = " << report.details.at("witness_x")
            << "\nwitness_y = " << report.details.at("witness_y") << "\n";
  return report.violations > 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l_p geometry, monotone-operator resolvents, and inequality verification"};
  app.require_subcommand(1);

  CommonFlags verify_flags, resolve_flags, moduli_flags, fit_flags, search_flags;

  auto* verify = app.add_subcommand("verify", "run the inequality check suite");
  verify_flags.attach(verify);

  auto* resolve = app.add_subcommand("resolve", "single resolvent solve");
  resolve_flags.attach(resolve);
  double resolve_r = 0.0;
  std::string resolve_x;
  resolve->add_option("--r", resolve_r, "resolvent parameter r");
  resolve->add_option("--x", resolve_x, "coordinates of x, space separated")
      ->required();

  auto* moduli = app.add_subcommand("moduli", "rho/delta estimation tables");
  moduli_flags.attach(moduli);
  std::vector<double> tau_grid, eps_grid;
  moduli->add_option("--tau", tau_grid, "tau grid for rho");
  moduli->add_option("--eps", eps_grid, "eps grid for delta");

  auto* fit = app.add_subcommand("fit", "Hoelder fits and plot data");
  fit_flags.attach(fit);

  auto* search = app.add_subcommand("search", "adversarial counterexample search");
  search_flags.attach(search);
  std::string inequality = "main1";
  int restarts = 100, steps = 200;
  search->add_option("--inequality", inequality, "registered inequality id");
  search->add_option("--restarts", restarts, "random restarts");
  search->add_option("--steps", steps, "ascent steps per restart");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(verify_flags);
    if (resolve->parsed()) return cmd_resolve(resolve_flags, resolve_r, resolve_x);
    if (moduli->parsed()) return cmd_moduli(moduli_flags, tau_grid, eps_grid);
    if (fit->parsed()) return cmd_fit(fit_flags);
    if (search->parsed()) return cmd_search(search_flags, inequality, restarts, steps);
  } catch (const lpres::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
