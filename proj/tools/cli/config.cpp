#include "cli/config.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cbie::cli {

using nlohmann::json;

const char* to_string(Task t) {
  switch (t) {
    case Task::kernel_check: return "kernel-check";
    case Task::pv_check: return "pv-check";
    case Task::nc_verify: return "nc-verify";
    case Task::solve: return "solve";
    case Task::convergence: return "convergence";
  }
  return "?";
}

Task task_from_string(const std::string& s) {
  for (auto t : {Task::kernel_check, Task::pv_check, Task::nc_verify, Task::solve, Task::convergence})
    if (s == to_string(t)) return t;
  throw ConfigError("task", "unknown task '" + s + "'");
}

PlaneDomain domain_by_name(const std::string& name) {
  if (name == "lens") return lens_domain();
  if (name == "ellipse") return ellipse_domain();
  throw ConfigError("domain", "unknown domain name '" + name + "'");
}

RunConfig default_config(Task task) {
  RunConfig c;
  c.task = task;
  switch (task) {
    case Task::pv_check: c.levels = {8, 16, 32, 64}; break;
    case Task::nc_verify:
      c.levels = {64, 128, 256};
      c.conditions = {ConditionId::eq8,  ConditionId::eq9,  ConditionId::eq10,
                      ConditionId::eq11, ConditionId::eq12, ConditionId::eq7_boundary};
      break;
    case Task::convergence:
      c.levels = {64, 128, 256};
      c.phi_manufactured = "z2";
      break;
    case Task::solve: c.phi_manufactured = "z2"; break;
    case Task::kernel_check: break;
  }
  return c;
}

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  std::set<std::string> ok(keys.begin(), keys.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw ConfigError(join(path, it.key()), "unknown key");
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

// number or [re, im]
cplx complex_value(const json& j, const std::string& path) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(path, "expected a number or [re, im]");
}

std::vector<cplx> complex_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected a list of coefficients");
  std::vector<cplx> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(complex_value(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

std::vector<int> int_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ConfigError(path, "expected a non-empty list of integers");
  std::vector<int> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(integer(j[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

CurveDescriptor curve(const json& j, const std::string& path) {
  allow_keys(j, path, {"kind", "params"});
  if (!j.contains("kind")) throw ConfigError(join(path, "kind"), "missing");
  if (!j.contains("params")) throw ConfigError(join(path, "params"), "missing");
  CurveKind kind;
  try {
    kind = curve_kind_from_string(text(j["kind"], join(path, "kind")));
  } catch (const ConfigError&) {
    throw;
  } catch (const ConfigurationError& e) {
    throw ConfigError(join(path, "kind"), e.what());
  }
  const json& p = j["params"];
  if (!p.is_array()) throw ConfigError(join(path, "params"), "expected a list of numbers");
  std::vector<double> params;
  for (std::size_t k = 0; k < p.size(); ++k)
    params.push_back(number(p[k], join(path, "params") + "[" + std::to_string(k) + "]"));
  try {
    return CurveDescriptor(kind, params);
  } catch (const ConfigurationError& e) {
    throw ConfigError(join(path, "params"), e.what());
  }
}

void parse_domain(const json& j, RunConfig& c) {
  if (j.is_string()) {
    c.domain_name = j.get<std::string>();
    c.domain = domain_by_name(c.domain_name);
    return;
  }
  allow_keys(j, "domain", {"a1", "b1", "lower", "upper"});
  for (const char* k : {"a1", "b1", "lower", "upper"})
    if (!j.contains(k)) throw ConfigError(join("domain", k), "missing");
  double a1 = number(j["a1"], "domain.a1"), b1 = number(j["b1"], "domain.b1");
  CurveDescriptor lo = curve(j["lower"], "domain.lower"), up = curve(j["upper"], "domain.upper");
  try {
    c.domain = make_domain(a1, b1, lo, up);
  } catch (const ConfigurationError& e) {
    throw ConfigError("domain", e.what());
  }
  ValidationReport v = validate_domain(c.domain, 201);
  if (!v.valid()) throw ConfigError("domain", "lower curve is not below the upper curve inside (a1, b1)");
  c.domain_name = "custom";
}

SolutionSpec parse_solution(const json& j, const std::string& path, const PlaneDomain& d) {
  allow_keys(j, path, {"name", "F", "g", "taper"});
  SolutionSpec s;
  if (j.contains("name")) {
    if (j.contains("F")) throw ConfigError(join(path, "F"), "give either a name or coefficients");
    std::string name = text(j["name"], join(path, "name"));
    try {
      s = solution_by_name(name);
    } catch (const ConfigurationError&) {
      throw ConfigError(join(path, "name"), "unknown solution '" + name + "'");
    }
  } else {
    s.name = "custom";
    if (j.contains("F")) {
      const json& f = j["F"];
      std::string fp = join(path, "F");
      allow_keys(f, fp, {"polynomial", "exp"});
      if (f.contains("polynomial") == f.contains("exp")) throw ConfigError(fp, "give exactly one of polynomial, exp");
      if (f.contains("polynomial")) {
        s.f_coeffs = complex_list(f["polynomial"], join(fp, "polynomial"));
      } else {
        const json& e = f["exp"];
        std::string ep = join(fp, "exp");
        allow_keys(e, ep, {"amplitude", "scale"});
        s.f_kind = SolutionSpec::FKind::exponential;
        if (e.contains("amplitude")) s.exp_amplitude = complex_value(e["amplitude"], join(ep, "amplitude"));
        if (e.contains("scale")) s.exp_scale = complex_value(e["scale"], join(ep, "scale"));
      }
    }
  }
  if (j.contains("g")) s.g_coeffs = complex_list(j["g"], join(path, "g"));
  if (j.contains("taper")) {
    const json& t = j["taper"];
    std::string tp = join(path, "taper");
    allow_keys(t, tp, {"power"});
    int p = t.contains("power") ? integer(t["power"], join(tp, "power")) : 1;
    if (p < 1) throw ConfigError(join(tp, "power"), "must be >= 1");
    s = with_endpoint_taper(s, d.a1, d.b1, p);
  }
  return s;
}

void parse_tolerances(const json& j, Tolerances& t) {
  allow_keys(j, "tolerances",
             {"window_fraction", "cond_threshold", "kernel_oracle", "kernel_fd", "annihilation", "pv_exact", "pv",
              "sup_residual", "min_ratio", "roundoff_floor", "residual", "trace_error"});
  auto set = [&](const char* key, double& dst) {
    if (j.contains(key)) {
      dst = number(j[key], join("tolerances", key));
      if (!(dst >= 0)) throw ConfigError(join("tolerances", key), "must be non-negative");
    }
  };
  set("window_fraction", t.window_fraction);
  set("cond_threshold", t.cond_threshold);
  set("kernel_oracle", t.kernel_oracle);
  set("kernel_fd", t.kernel_fd);
  set("annihilation", t.annihilation);
  set("pv_exact", t.pv_exact);
  set("pv", t.pv);
  set("sup_residual", t.sup_residual);
  set("min_ratio", t.min_ratio);
  set("roundoff_floor", t.roundoff_floor);
  set("residual", t.residual);
  set("trace_error", t.trace_error);
  if (t.window_fraction >= 0.5) throw ConfigError("tolerances.window_fraction", "must be below 0.5");
}

// Best-effort key name for a syntax error: the last quoted key before it.
std::string key_before(const std::string& text, std::size_t pos) {
  std::string head = text.substr(0, std::min(pos, text.size()));
  static const std::regex key_re("\"([^\"\\\\]*)\"\\s*:");
  std::string last;
  for (auto it = std::sregex_iterator(head.begin(), head.end(), key_re); it != std::sregex_iterator(); ++it)
    last = (*it)[1].str();
  return last.empty() ? "<root>" : last;
}

}  // namespace

RunConfig parse_config(const std::string& src, Task task, const std::string& base_dir) {
  json j;
  try {
    j = json::parse(src);
  } catch (const json::parse_error& e) {
    throw ConfigError(key_before(src, e.byte), std::string("malformed JSON: ") + e.what());
  }
  RunConfig c = default_config(task);
  c.base_dir = base_dir;
  allow_keys(j, "", {"schema_version", "task", "seed", "domain", "bc", "solution", "rule", "conditions", "tolerances",
                     "outputs", "kernel_points"});
  if (j.contains("schema_version")) {
    const json& v = j["schema_version"];
    if (!((v.is_string() && v.get<std::string>() == "1") || (v.is_number_integer() && v.get<int>() == 1)))
      throw ConfigError("schema_version", "unsupported version (expected \"1\")");
  }
  if (j.contains("task")) {
    Task t = task_from_string(text(j["task"], "task"));
    if (t != task) throw ConfigError("task", std::string("config is for '") + to_string(t) + "', not '" + to_string(task) + "'");
  }
  if (j.contains("seed")) {
    const json& s = j["seed"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      throw ConfigError("seed", "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (j.contains("kernel_points")) {
    c.kernel_points = integer(j["kernel_points"], "kernel_points");
    if (c.kernel_points < 1) throw ConfigError("kernel_points", "must be positive");
  }
  if (j.contains("domain")) parse_domain(j["domain"], c);
  if (j.contains("bc")) {
    const json& b = j["bc"];
    allow_keys(b, "bc", {"alpha1", "alpha2", "phi"});
    if (b.contains("alpha1")) c.alpha1 = complex_value(b["alpha1"], "bc.alpha1");
    if (b.contains("alpha2")) c.alpha2 = complex_value(b["alpha2"], "bc.alpha2");
    if (c.alpha1 == 0.0) throw ConfigError("bc.alpha1", "must be nonzero");
    if (c.alpha2 == 0.0) throw ConfigError("bc.alpha2", "must be nonzero");
    if (b.contains("phi")) {
      const json& p = b["phi"];
      allow_keys(p, "bc.phi", {"manufactured", "file"});
      if (p.contains("manufactured") == p.contains("file"))
        throw ConfigError("bc.phi", "give exactly one of manufactured, file");
      if (p.contains("manufactured")) {
        std::string name = text(p["manufactured"], "bc.phi.manufactured");
        try {
          solution_by_name(name);
        } catch (const ConfigurationError&) {
          throw ConfigError("bc.phi.manufactured", "unknown solution '" + name + "'");
        }
        c.phi_manufactured = name;
        c.phi_file.reset();
      } else {
        std::filesystem::path f = text(p["file"], "bc.phi.file");
        if (f.is_relative()) f = std::filesystem::path(base_dir) / f;
        if (!std::filesystem::exists(f)) throw ConfigError("bc.phi.file", "file not found: " + f.string());
        c.phi_file = f.string();
        c.phi_manufactured.reset();
      }
    }
  }
  if (j.contains("solution")) c.solution = parse_solution(j["solution"], "solution", c.domain);
  if (j.contains("rule")) {
    const json& r = j["rule"];
    allow_keys(r, "rule", {"family", "N", "levels"});
    if (r.contains("family")) {
      std::string f = text(r["family"], "rule.family");
      try {
        c.family = rule_family_from_string(f);
      } catch (const ConfigurationError&) {
        throw ConfigError("rule.family", "unknown family '" + f + "'");
      }
    }
    if (r.contains("N")) c.n = integer(r["N"], "rule.N");
    if (r.contains("levels")) c.levels = int_list(r["levels"], "rule.levels");
  }
  if (j.contains("conditions")) {
    const json& l = j["conditions"];
    if (!l.is_array() || l.empty()) throw ConfigError("conditions", "expected a non-empty list");
    c.conditions.clear();
    for (std::size_t k = 0; k < l.size(); ++k) {
      std::string key = "conditions[" + std::to_string(k) + "]";
      try {
        c.conditions.push_back(condition_from_string(text(l[k], key)));
      } catch (const ConfigError&) {
        throw;
      } catch (const ConfigurationError& e) {
        throw ConfigError(key, e.what());
      }
    }
  }
  if (j.contains("tolerances")) parse_tolerances(j["tolerances"], c.tol);
  if (j.contains("outputs")) {
    const json& o = j["outputs"];
    allow_keys(o, "outputs", {"dump"});
    if (o.contains("dump")) c.dump = text(o["dump"], "outputs.dump");
  }

  bool solve_like = task == Task::solve || task == Task::convergence;
  if (solve_like && c.n < 8) throw ConfigError("rule.N", "solve tasks need N >= 8");
  if (c.n < 2) throw ConfigError("rule.N", "need N >= 2");
  for (std::size_t k = 0; k < c.levels.size(); ++k) {
    if (c.levels[k] < (solve_like ? 8 : 2))
      throw ConfigError("rule.levels", solve_like ? "solve tasks need levels >= 8" : "levels must be >= 2");
    if (k > 0 && c.levels[k] <= c.levels[k - 1]) throw ConfigError("rule.levels", "levels must increase strictly");
  }
  if ((task == Task::solve || task == Task::convergence || task == Task::nc_verify) &&
      c.family != RuleFamily::gauss_legendre)
    throw ConfigError("rule.family", "this task needs gauss-legendre");
  return c;
}

RunConfig load_config(const std::string& path, Task task) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::filesystem::path base = std::filesystem::path(path).parent_path();
  return parse_config(ss.str(), task, base.empty() ? "." : base.string());
}

}  // namespace cbie::cli
