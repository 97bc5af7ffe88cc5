#include "cli/run.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cli/oracles.hpp"

namespace cbie::cli {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ojson cnum(cplx z) { return ojson::array({z.real(), z.imag()}); }

ojson opt(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::string write_text(const std::string& out_dir, const std::string& name, const std::string& body) {
  fs::create_directories(out_dir);
  fs::path p = fs::path(out_dir) / name;
  std::ofstream os(p, std::ios::binary);
  if (!os) throw DataError("cannot write " + p.string());
  os << body;
  if (!os) throw DataError("write failed: " + p.string());
  return p.string();
}

std::string write_json(const std::string& out_dir, const std::string& name, const ojson& j) {
  return write_text(out_dir, name, j.dump(2) + "\n");
}

ojson header(const RunConfig& cfg) {
  ojson j;
  j["schema_version"] = schema_version;
  j["task"] = to_string(cfg.task);
  return j;
}

ojson domain_json(const RunConfig& cfg) {
  auto curve = [](const CurveDescriptor& c) {
    return ojson{{"kind", to_string(c.kind())}, {"params", c.params()}};
  };
  return {{"name", cfg.domain_name},
          {"a1", cfg.domain.a1},
          {"b1", cfg.domain.b1},
          {"lower", curve(cfg.domain.lower)},
          {"upper", curve(cfg.domain.upper)}};
}

ojson gates_json(const TaskResult& r) {
  return {{"pass", r.failures.empty()}, {"failures", r.failures}, {"warnings", r.warnings}};
}

std::string csv_head(const std::string& columns) { return "# schema_version: 1\n" + columns + "\n"; }

// prev/cur >= min_ratio unless cur already sits at the roundoff floor
bool ratio_ok(double prev, double cur, const Tolerances& t) {
  if (cur <= t.roundoff_floor) return true;
  return prev / cur >= t.min_ratio;
}

}  // namespace

TaskResult run_kernel_check(const RunConfig& cfg, const std::string& out_dir) {
  auto pts = kernel_probe_points(cfg.seed, cfg.kernel_points);
  std::vector<KernelCheckRow> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { rows[i] = kernel_check_row(pts[i]); });
  std::string body = csv_head("index,d1,x2,xi2,fund_rel_error,dx2_rel_error,dx1_rel_error,annihilation_fd,annihilation_exact");
  TaskResult r;
  double worst[5] = {0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& w = rows[i];
    body += std::to_string(i) + "," + num(w.point.d1) + "," + num(w.point.x2) + "," + num(w.point.xi2) + "," +
            num(w.fund_error) + "," + num(w.dx2_error) + "," + num(w.dx1_error) + "," + num(w.annihilation_fd) +
            "," + num(w.annihilation_exact) + "\n";
    worst[0] = std::max(worst[0], w.fund_error);
    worst[1] = std::max(worst[1], w.dx2_error);
    worst[2] = std::max(worst[2], w.dx1_error);
    worst[3] = std::max(worst[3], w.annihilation_fd);
    worst[4] = std::max(worst[4], w.annihilation_exact);
  }
  const Tolerances& t = cfg.tol;
  if (!(worst[0] <= t.kernel_oracle)) r.failures.push_back("fund_solution vs quadrature: " + num(worst[0]));
  if (!(worst[1] <= t.kernel_fd)) r.failures.push_back("dU_dx2 vs finite difference: " + num(worst[1]));
  if (!(worst[2] <= t.kernel_fd)) r.failures.push_back("dU_dx1 vs finite difference: " + num(worst[2]));
  if (!(worst[3] <= t.annihilation)) r.failures.push_back("annihilation finite difference: " + num(worst[3]));
  if (!(worst[4] == 0)) r.failures.push_back("closed-form annihilation not exact: " + num(worst[4]));
  r.files.push_back(write_text(out_dir, "kernel_check.csv", body));
  return r;
}

TaskResult run_pv_check(const RunConfig& cfg, const std::string& out_dir) {
  TaskResult r;
  std::string body = csv_head("case,N,family,value_re,value_im,error");
  for (const auto& c : pv_corpus()) {
    double prev_diff = -1;
    cplx prev_val;
    for (std::size_t k = 0; k < cfg.levels.size(); ++k) {
      int n = cfg.levels[k];
      QuadratureRule rule = build_rule(cfg.family, n, c.a, c.b);
      cplx v = pv_integrate(c.f, c.df, c.xi, rule);
      double err = std::abs(v - c.exact);
      body += c.name + "," + std::to_string(n) + "," + to_string(cfg.family) + "," + num(v.real()) + "," +
              num(v.imag()) + "," + num(err) + "\n";
      bool gauss = cfg.family == RuleFamily::gauss_legendre;
      if (c.polynomial && gauss && !(err <= cfg.tol.pv_exact))
        r.failures.push_back(c.name + " N=" + std::to_string(n) + ": error " + num(err));
      if (!c.polynomial && gauss && n >= 64 && !(err <= cfg.tol.pv))
        r.failures.push_back(c.name + " N=" + std::to_string(n) + ": error " + num(err));
      // successive differences should shrink for N >= 16 until roundoff
      if (k > 0 && cfg.levels[k - 1] >= 16 && !c.polynomial) {
        double diff = std::abs(v - prev_val);
        if (prev_diff >= 0 && diff > prev_diff && diff > cfg.tol.roundoff_floor)
          r.failures.push_back(c.name + " N=" + std::to_string(n) + ": successive differences grew");
        prev_diff = diff;
      }
      prev_val = v;
    }
  }
  r.files.push_back(write_text(out_dir, "pv_check.csv", body));
  return r;
}

TaskResult run_nc_verify(const RunConfig& cfg, const std::string& out_dir) {
  std::vector<SolutionSpec> sols = cfg.solution ? std::vector<SolutionSpec>{*cfg.solution} : canonical_set();
  const PlaneDomain& d = cfg.domain;
  // [solution][condition][level]
  std::vector<std::vector<std::vector<double>>> sup(
      sols.size(), std::vector<std::vector<double>>(cfg.conditions.size(), std::vector<double>(cfg.levels.size())));
  for (std::size_t s = 0; s < sols.size(); ++s)
    for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
      QuadratureRule rule = build_rule(cfg.family, cfg.levels[l], d.a1, d.b1);
      BoundaryTrace trace = make_trace(sols[s], d, rule);
      for (std::size_t c = 0; c < cfg.conditions.size(); ++c) {
        ConditionId id = cfg.conditions[c];
        double v = residual_report(trace, d, id, Reading::resolved, cfg.tol.window_fraction, Side::lower).sup_window;
        if (id == ConditionId::eq7_boundary)
          v = std::max(v, residual_report(trace, d, id, Reading::resolved, cfg.tol.window_fraction, Side::upper)
                              .sup_window);
        if (!std::isfinite(v)) throw NumericError("nc-verify: non-finite residual");
        sup[s][c][l] = v;
      }
    }

  TaskResult r;
  ojson records = ojson::array();
  std::string csv = csv_head("solution,condition,N,sup_residual,ratio");
  for (std::size_t s = 0; s < sols.size(); ++s)
    for (std::size_t c = 0; c < cfg.conditions.size(); ++c)
      for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
        double cur = sup[s][c][l];
        std::optional<double> ratio;
        if (l > 0 && cur > 0) ratio = sup[s][c][l - 1] / cur;
        std::string tag = sols[s].name + " " + to_string(cfg.conditions[c]) + " N=" + std::to_string(cfg.levels[l]);
        if (l > 0 && !ratio_ok(sup[s][c][l - 1], cur, cfg.tol))
          r.failures.push_back(tag + ": ratio " + num(sup[s][c][l - 1] / cur));
        if (l + 1 == cfg.levels.size() && !(cur <= cfg.tol.sup_residual))
          r.failures.push_back(tag + ": sup residual " + num(cur));
        records.push_back({{"solution", sols[s].name},
                           {"condition", to_string(cfg.conditions[c])},
                           {"N", cfg.levels[l]},
                           {"sup_residual", cur},
                           {"ratio", opt(ratio)}});
        csv += sols[s].name + "," + to_string(cfg.conditions[c]) + "," + std::to_string(cfg.levels[l]) + "," +
               num(cur) + "," + (ratio ? num(*ratio) : std::string()) + "\n";
      }
  ojson j = header(cfg);
  j["domain"] = domain_json(cfg);
  j["rule_family"] = to_string(cfg.family);
  j["window_fraction"] = cfg.tol.window_fraction;
  j["roundoff_floor"] = cfg.tol.roundoff_floor;
  j["records"] = records;
  j["gates"] = gates_json(r);
  r.files.push_back(write_json(out_dir, "nc_verify.json", j));
  r.files.push_back(write_text(out_dir, "nc_verify.csv", csv));
  return r;
}

BCSpec load_phi_file(const std::string& path, cplx alpha1, cplx alpha2, double a1, double b1) {
  std::ifstream in(path);
  if (!in) throw ConfigError("bc.phi.file", "cannot read " + path);
  std::vector<double> x, c[4];
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ss(line);
    double v[5];
    int got = 0;
    while (got < 5 && ss >> v[got]) ++got;
    if (got == 0 && x.empty()) continue;  // header row
    if (got != 5) throw ConfigError("bc.phi.file", "line " + std::to_string(lineno) + ": expected 5 numbers");
    x.push_back(v[0]);
    for (int k = 0; k < 4; ++k) c[k].push_back(v[k + 1]);
  }
  if (x.size() < 2) throw ConfigError("bc.phi.file", "need at least two rows");
  if (x.front() > a1 || x.back() < b1) throw ConfigError("bc.phi.file", "table does not cover [a1, b1]");
  std::vector<CurveDescriptor> fit;
  try {
    for (int k = 0; k < 4; ++k) fit.push_back(CurveDescriptor::tabulated(x, c[k]));
  } catch (const ConfigurationError& e) {
    throw ConfigError("bc.phi.file", e.what());
  }
  BCSpec bc;
  bc.alpha1 = alpha1;
  bc.alpha2 = alpha2;
  bc.phi1 = [f = fit](double t) { return cplx(f[0].eval(t).value, f[1].eval(t).value); };
  bc.phi2 = [f = fit](double t) { return cplx(f[2].eval(t).value, f[3].eval(t).value); };
  return bc;
}

ProblemData problem_data(const RunConfig& cfg) {
  ProblemData p;
  if (cfg.phi_file) {
    p.bc = load_phi_file(*cfg.phi_file, cfg.alpha1, cfg.alpha2, cfg.domain.a1, cfg.domain.b1);
    p.truth = cfg.solution;
    p.source = "file";
    return p;
  }
  SolutionSpec s;
  if (cfg.solution) {
    s = *cfg.solution;
  } else if (cfg.phi_manufactured) {
    s = solution_by_name(*cfg.phi_manufactured);
  } else {
    throw ConfigError("bc.phi", "no boundary data given");
  }
  QuadratureRule probe = gauss_rule(2, cfg.domain.a1, cfg.domain.b1);
  p.bc = make_bc(s, cfg.domain, cfg.alpha1, cfg.alpha2, probe).bc;
  p.truth = s;
  p.source = "manufactured:" + s.name;
  return p;
}

TaskResult run_solve(const RunConfig& cfg, const std::string& out_dir) {
  const PlaneDomain& d = cfg.domain;
  ProblemData pd = problem_data(cfg);
  QuadratureRule rule = build_rule(cfg.family, cfg.n, d.a1, d.b1);
  FredholmSystem sys = assemble(d, pd.bc, rule);
  SolveReport rep = solve_system(sys, cfg.tol.cond_threshold);
  BoundaryTrace trace = solved_trace(rep, pd.bc, rule);
  rep.interior_samples = sample_interior(d, trace, interior_grid(d));

  TaskResult r;
  EndpointReport ends = endpoint_report(pd.bc, d.a1, d.b1);
  if (!ends.vanishes()) r.warnings.push_back(ends.warning());
  if (rep.method != SolveMethod::direct)
    r.warnings.push_back("condition estimate above threshold; least-squares fallback used, error gates not applied");

  double delta = cfg.tol.window_fraction * (d.b1 - d.a1);
  std::optional<double> trace_err, interior_err;
  ojson samples = ojson::array();
  if (pd.truth) {
    BoundaryTrace exact = make_trace(*pd.truth, d, rule);
    trace_err = std::max(window_max_error(rule, rep.u_lower, exact.u_lower, delta),
                         window_max_error(rule, rep.u_upper, exact.u_upper, delta));
    interior_err = 0.0;
  }
  for (const auto& s : rep.interior_samples) {
    ojson e{{"x1", s.point.x1}, {"x2", s.point.x2}, {"u", cnum(s.value)}};
    if (pd.truth) {
      double err = std::abs(s.value - eval_solution(*pd.truth, s.point.x1, s.point.x2).u);
      interior_err = std::max(*interior_err, err);
      e["error"] = err;
    }
    samples.push_back(e);
  }
  if (rep.method == SolveMethod::direct) {
    if (!(rep.residual_norm <= cfg.tol.residual)) r.failures.push_back("system residual " + num(rep.residual_norm));
    if (trace_err && !(*trace_err <= cfg.tol.trace_error)) r.failures.push_back("trace error " + num(*trace_err));
    if (interior_err && !(*interior_err <= cfg.tol.trace_error))
      r.failures.push_back("interior error " + num(*interior_err));
  }

  ojson j = header(cfg);
  j["domain"] = domain_json(cfg);
  j["alpha1"] = cnum(cfg.alpha1);
  j["alpha2"] = cnum(cfg.alpha2);
  j["data_source"] = pd.source;
  j["rule"] = {{"family", to_string(cfg.family)}, {"N", cfg.n}};
  j["method"] = to_string(rep.method);
  j["condition_estimate"] = rep.condition_estimate;
  j["cond_threshold"] = cfg.tol.cond_threshold;
  j["residual_norm"] = rep.residual_norm;
  j["window_fraction"] = cfg.tol.window_fraction;
  j["trace_error"] = opt(trace_err);
  j["interior_error"] = opt(interior_err);
  j["endpoint_phi"] = {{"phi1_a", ends.phi1_a}, {"phi1_b", ends.phi1_b}, {"phi2_a", ends.phi2_a}, {"phi2_b", ends.phi2_b}};
  j["interior_samples"] = samples;
  j["traces_csv"] = "traces.csv";
  if (cfg.dump) j["dump"] = *cfg.dump;
  j["gates"] = gates_json(r);

  std::string csv = csv_head("x1,re_u1,im_u1,re_u2,im_u2");
  for (std::size_t m = 0; m < rule.size(); ++m)
    csv += num(rule.nodes[m]) + "," + num(rep.u_lower[m].real()) + "," + num(rep.u_lower[m].imag()) + "," +
           num(rep.u_upper[m].real()) + "," + num(rep.u_upper[m].imag()) + "\n";
  r.files.push_back(write_json(out_dir, "solve_report.json", j));
  r.files.push_back(write_text(out_dir, "traces.csv", csv));
  if (cfg.dump) {
    fs::path p = fs::path(out_dir) / *cfg.dump;
    write_dump(sys, p.string());
    r.files.push_back(p.string());
  }
  return r;
}

TaskResult run_convergence(const RunConfig& cfg, const std::string& out_dir) {
  const PlaneDomain& d = cfg.domain;
  ProblemData pd = problem_data(cfg);
  SweepOptions so;
  so.family = cfg.family;
  so.cond_threshold = cfg.tol.cond_threshold;
  so.window_fraction = cfg.tol.window_fraction;
  ConvergenceTable table = convergence_sweep(d, pd.bc, cfg.levels, pd.truth, so);

  TaskResult r;
  bool all_direct = true;
  for (const auto& row : table.rows) all_direct = all_direct && row.method == SolveMethod::direct;
  if (!all_direct) r.warnings.push_back("least-squares fallback at some level; error gates not applied");
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& row = table.rows[k];
    std::string tag = "N=" + std::to_string(row.n);
    if (row.method == SolveMethod::direct && !(row.residual <= cfg.tol.residual))
      r.failures.push_back(tag + ": system residual " + num(row.residual));
    if (!all_direct || !row.trace_error) continue;
    if (k > 0) {
      const auto& prev = table.rows[k - 1];
      if (!ratio_ok(*prev.trace_error, *row.trace_error, cfg.tol))
        r.failures.push_back(tag + ": trace error ratio " + num(*prev.trace_error / *row.trace_error));
      if (*row.interior_error > *prev.interior_error && *row.interior_error > cfg.tol.roundoff_floor)
        r.failures.push_back(tag + ": interior error grew");
    }
    if (k + 1 == table.rows.size()) {
      if (!(*row.trace_error <= cfg.tol.trace_error)) r.failures.push_back(tag + ": trace error " + num(*row.trace_error));
      if (!(*row.interior_error <= cfg.tol.trace_error))
        r.failures.push_back(tag + ": interior error " + num(*row.interior_error));
    }
  }

  ojson rows = ojson::array();
  std::string csv = csv_head("N,trace_error,interior_error,residual,condition,method,ratio");
  auto cell = [](const std::optional<double>& v) { return v ? num(*v) : std::string(); };
  for (const auto& row : table.rows) {
    rows.push_back({{"N", row.n},
                    {"trace_error", opt(row.trace_error)},
                    {"interior_error", opt(row.interior_error)},
                    {"residual", row.residual},
                    {"condition", row.condition},
                    {"method", to_string(row.method)},
                    {"ratio", opt(row.ratio)}});
    csv += std::to_string(row.n) + "," + cell(row.trace_error) + "," + cell(row.interior_error) + "," +
           num(row.residual) + "," + num(row.condition) + "," + to_string(row.method) + "," + cell(row.ratio) + "\n";
  }
  ojson j = header(cfg);
  j["domain"] = domain_json(cfg);
  j["alpha1"] = cnum(cfg.alpha1);
  j["alpha2"] = cnum(cfg.alpha2);
  j["data_source"] = pd.source;
  j["rule_family"] = to_string(cfg.family);
  j["window_fraction"] = cfg.tol.window_fraction;
  j["rows"] = rows;
  j["gates"] = gates_json(r);
  r.files.push_back(write_json(out_dir, "convergence.json", j));
  r.files.push_back(write_text(out_dir, "convergence.csv", csv));
  return r;
}

TaskResult run_task(const RunConfig& cfg, const std::string& out_dir) {
  switch (cfg.task) {
    case Task::kernel_check: return run_kernel_check(cfg, out_dir);
    case Task::pv_check: return run_pv_check(cfg, out_dir);
    case Task::nc_verify: return run_nc_verify(cfg, out_dir);
    case Task::solve: return run_solve(cfg, out_dir);
    case Task::convergence: return run_convergence(cfg, out_dir);
  }
  throw ConfigurationError("task: not handled");
}

}  // namespace cbie::cli
