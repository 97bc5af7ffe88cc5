#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbie/cbie.hpp"

namespace cbie::cli {

enum class Task { kernel_check, pv_check, nc_verify, solve, convergence };

const char* to_string(Task t);
Task task_from_string(const std::string& s);

// Configuration problem tied to a key path such as "bc.alpha1".
struct ConfigError : ConfigurationError {
  std::string key;
  ConfigError(std::string key_, const std::string& what)
      : ConfigurationError("config key '" + key_ + "': " + what), key(std::move(key_)) {}
};

struct Tolerances {
  double window_fraction = 0.1;
  double cond_threshold = default_cond_threshold;
  double kernel_oracle = 1e-10;   // fund_solution vs adaptive quadrature, relative
  double kernel_fd = 1e-8;        // first derivatives vs finite differences
  double annihilation = 1e-6;     // finite-difference residual of the operator on U
  double pv_exact = 1e-12;        // closed-form PV corpus
  double pv = 1e-10;              // analytic (exp) PV case
  double sup_residual = 1e-3;     // necessary conditions at the finest level
  double min_ratio = 2.0;         // halving between consecutive levels
  double roundoff_floor = 1e-10;  // below this a ratio is not meaningful
  double residual = 1e-8;         // system residual of a solve
  double trace_error = 1e-2;      // solved trace vs manufactured truth
};

struct RunConfig {
  Task task = Task::solve;
  std::string domain_name = "lens";
  PlaneDomain domain = lens_domain();
  cplx alpha1 = 1;
  cplx alpha2 = 2;
  std::optional<std::string> phi_manufactured;
  std::optional<std::string> phi_file;
  std::optional<SolutionSpec> solution;
  RuleFamily family = RuleFamily::gauss_legendre;
  int n = 128;
  std::vector<int> levels;
  std::vector<ConditionId> conditions;
  Tolerances tol;
  std::uint64_t seed = Lcg::default_seed;
  int kernel_points = 100;
  std::optional<std::string> dump;
  std::string base_dir = ".";  // relative file paths resolve against this
};

RunConfig default_config(Task task);

// Parses a JSON text. Unknown keys are rejected by name.
RunConfig parse_config(const std::string& text, Task task, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path, Task task);

PlaneDomain domain_by_name(const std::string& name);

}  // namespace cbie::cli
