#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"

namespace cbie::cli {

inline constexpr const char* schema_version = "1";

struct TaskResult {
  std::vector<std::string> files;     // written, in order
  std::vector<std::string> failures;  // failed tolerance gates
  std::vector<std::string> warnings;
  int exit_code() const { return failures.empty() ? 0 : 1; }
};

// Writes the task's outputs into out_dir (created if missing).
TaskResult run_task(const RunConfig& cfg, const std::string& out_dir);

TaskResult run_kernel_check(const RunConfig& cfg, const std::string& out_dir);
TaskResult run_pv_check(const RunConfig& cfg, const std::string& out_dir);
TaskResult run_nc_verify(const RunConfig& cfg, const std::string& out_dir);
TaskResult run_solve(const RunConfig& cfg, const std::string& out_dir);
TaskResult run_convergence(const RunConfig& cfg, const std::string& out_dir);

// Boundary data from the config: manufactured name, explicit solution or file.
struct ProblemData {
  BCSpec bc;
  std::optional<SolutionSpec> truth;
  std::string source;
};
ProblemData problem_data(const RunConfig& cfg);

// Reads x1, Re phi1, Im phi1, Re phi2, Im phi2 rows; '#' lines and a header are skipped.
BCSpec load_phi_file(const std::string& path, cplx alpha1, cplx alpha2, double a1, double b1);

}  // namespace cbie::cli
