#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli/config.hpp"
#include "cli/run.hpp"

using namespace cbie;
using namespace cbie::cli;

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void apply_threads_env() {
  const char* env = std::getenv("CBIE_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw ConfigError("CBIE_THREADS", "expected a positive integer");
  set_max_threads(static_cast<unsigned>(v));
}

struct Flags {
  std::string config, out = "out";
  std::optional<std::uint64_t> seed;
  std::string domain, solution, conditions, levels;
};

RunConfig build_config(Task task, const Flags& f) {
  RunConfig cfg = f.config.empty() ? default_config(task) : load_config(f.config, task);
  if (f.seed) cfg.seed = *f.seed;
  if (!f.domain.empty()) {
    cfg.domain = domain_by_name(f.domain);
    cfg.domain_name = f.domain;
  }
  if (!f.solution.empty()) {
    try {
      cfg.solution = solution_by_name(f.solution);
    } catch (const ConfigurationError&) {
      throw ConfigError("--solution", "unknown solution '" + f.solution + "'");
    }
  }
  if (!f.conditions.empty()) {
    cfg.conditions.clear();
    for (const auto& c : split_list(f.conditions)) {
      try {
        cfg.conditions.push_back(condition_from_string(c));
      } catch (const ConfigurationError&) {
        throw ConfigError("--conditions", "unknown condition '" + c + "'");
      }
    }
  }
  if (!f.levels.empty()) {
    cfg.levels.clear();
    for (const auto& l : split_list(f.levels)) {
      try {
        std::size_t used = 0;
        int v = std::stoi(l, &used);
        if (used != l.size()) throw std::invalid_argument(l);
        cfg.levels.push_back(v);
      } catch (const std::logic_error&) {
        throw ConfigError("--levels", "not an integer: '" + l + "'");
      }
    }
    for (std::size_t k = 0; k < cfg.levels.size(); ++k)
      if (cfg.levels[k] < 2 || (k > 0 && cfg.levels[k] <= cfg.levels[k - 1]))
        throw ConfigError("--levels", "levels must be >= 2 and increase strictly");
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary integral solver for u_22 + i u_12 = 0 with non-local boundary conditions"};
  app.require_subcommand(1);
  Flags flags;
  std::optional<Task> chosen;
  for (Task t : {Task::kernel_check, Task::pv_check, Task::nc_verify, Task::solve, Task::convergence}) {
    CLI::App* sub = app.add_subcommand(to_string(t));
    sub->add_option("--config", flags.config, "JSON config file");
    sub->add_option("--out", flags.out, "output directory")->capture_default_str();
    sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& v) { flags.seed = v; },
                                            "seed for random probe points (default 42)");
    if (t == Task::nc_verify) {
      sub->add_option("--domain", flags.domain, "lens or ellipse");
      sub->add_option("--solution", flags.solution, "manufactured solution name");
      sub->add_option("--conditions", flags.conditions, "comma list, e.g. eq8,eq9");
      sub->add_option("--levels", flags.levels, "comma list of N, e.g. 64,128,256");
    }
    sub->callback([&chosen, t] { chosen = t; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    apply_threads_env();
    RunConfig cfg = build_config(*chosen, flags);
    TaskResult r = run_task(cfg, flags.out);
    for (const auto& f : r.files) std::cout << "wrote " << f << "\n";
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& f : r.failures) std::cerr << "gate failed: " << f << "\n";
    std::cout << (r.failures.empty() ? "all gates passed" : "tolerance gate failure") << "\n";
    return r.exit_code();
  } catch (const ConfigurationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const cbie::Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}
