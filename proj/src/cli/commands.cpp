#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "credal/bayes.hpp"
#include "credal/cli.hpp"
#include "credal/errors.hpp"
#include "credal/property_lab.hpp"
#include "credal/scenario.hpp"

namespace credal {

namespace {

struct Options {
  std::string file;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  bool quiet = false;
  std::string out_path;
  // sweep
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 11;
};

struct Output {
  Json report;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  int status = 0;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render_csv(const Output& o) {
  std::string text;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) text += (i ? "," : "") + csv_field(cells[i]);
    text += "\n";
  };
  line(o.csv_header);
  for (const auto& r : o.csv_rows) line(r);
  return text;
}

Scenario load_with_overrides(const Options& opt) {
  auto s = load_scenario(opt.file);
  if (opt.tol) {
    auto p = s.solver_params();
    p.theta_tol = *opt.tol;
    try {
      p.validate();
    } catch (const DomainError& e) {
      throw ScenarioError(std::string("--tol: ") + e.what());
    }
    s.solver = p;
  }
  return s;
}

void interval_rows(Output& o, const PropertyValueSet& set, const std::vector<std::string>& prefix,
                   const std::vector<std::string>& suffix) {
  for (const auto& iv : set.intervals()) {
    auto row = prefix;
    row.push_back(num(iv.lo));
    row.push_back(num(iv.hi));
    row.insert(row.end(), suffix.begin(), suffix.end());
    o.csv_rows.push_back(std::move(row));
  }
}

Output cmd_elicit(const Options& opt) {
  const auto s = load_with_overrides(opt);
  const auto r = elicit(s.credal_set(), s.loss, s.domain, s.solver_params());
  Output o;
  o.report = {{"scenario", to_json(s)}, {"result", to_json(r)}};
  o.csv_header = {"theta_lo", "theta_hi", "value", "iterations"};
  interval_rows(o, r.argmin, {}, {num(r.value), std::to_string(r.iterations)});
  return o;
}

Output cmd_bayes(const Options& opt) {
  const auto s = load_with_overrides(opt);
  const auto set = s.credal_set();
  Json results = Json::array();
  Output o;
  o.csv_header = {"generator", "theta_lo", "theta_hi", "risk", "clamped"};
  for (std::size_t j = 0; j < set.size(); ++j) {
    const auto r = bayes_pair(s.loss, set[j], s.domain);
    Json entry = to_json(r);
    entry["generator"] = j;
    entry["distribution"] = std::vector<double>(set[j].weights().begin(), set[j].weights().end());
    results.push_back(entry);
    interval_rows(o, r.theta_set, {std::to_string(j)}, {num(r.risk), r.clamped ? "true" : "false"});
  }
  o.report = {{"scenario", to_json(s)}, {"result", results}};
  return o;
}

Output cmd_worstcase(const Options& opt) {
  const auto s = load_with_overrides(opt);
  const auto set = s.credal_set();
  const auto p = s.solver_params();
  const auto wc = worst_case_distribution(set, s.loss, s.domain, p);
  const auto inc = check_inclusion(set, s.loss, s.domain, p);
  Output o;
  Json result = to_json(wc);
  result["inclusion"] = to_json(inc);
  o.report = {{"scenario", to_json(s)}, {"result", result}};
  o.csv_header = {"outcome", "z", "p_star"};
  const auto z = set.space().points();
  for (std::size_t i = 0; i < z.size(); ++i)
    o.csv_rows.push_back({std::to_string(i), num(z[i]), num(wc.distribution[i])});
  return o;
}

Output cmd_verify(const Options& opt) {
  TrialConfig cfg = opt.file.empty() ? TrialConfig{} : load_trial_config(opt.file);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.tol) {
    cfg.tolerances.theta_tol = *opt.tol;
    try {
      cfg.validate();
    } catch (const DomainError& e) {
      throw ScenarioError(std::string("--tol: ") + e.what());
    }
  }
  const auto reports = run_suite(cfg);
  Output o;
  Json checks = Json::array();
  bool all = true;
  o.csv_header = {"check", "trials_run", "tolerance", "max_violation", "failures", "passed"};
  for (const auto& r : reports) {
    checks.push_back(to_json(r));
    all = all && r.passed();
    o.csv_rows.push_back({r.check_name, std::to_string(r.trials_run), num(r.tolerance), num(r.max_violation),
                          std::to_string(r.failures.size()), r.passed() ? "true" : "false"});
  }
  o.report = {{"scenario", to_json(cfg)}, {"result", {{"passed", all}, {"checks", checks}}}};
  o.status = all ? 0 : 1;
  return o;
}

// Applies `value` to the swept parameter of a scenario.
void set_parameter(Scenario& s, const std::string& param, double value) {
  static const std::regex indexed(R"((upper|lower)\[(\d+)\])");
  std::smatch m;
  if (param == "gamma") {
    if (s.loss.kind() != LossKind::entropic) throw ScenarioError("--param gamma needs an entropic loss");
    s.loss = LossSpec::entropic(value);
  } else if (param == "tau") {
    if (s.loss.kind() != LossKind::pinball) throw ScenarioError("--param tau needs a pinball loss");
    s.loss = LossSpec::pinball(value);
  } else if (param == "domain.lo") {
    s.domain = PropertyDomain(value, s.domain.hi);
  } else if (param == "domain.hi") {
    s.domain = PropertyDomain(s.domain.lo, value);
  } else if (std::regex_match(param, m, indexed)) {
    if (!s.bounds) throw ScenarioError("--param " + param + " needs a scenario given by bounds");
    auto& v = m[1] == "upper" ? s.bounds->upper : s.bounds->lower;
    const auto i = std::stoul(m[2]);
    if (i >= v.size()) throw ScenarioError("--param " + param + ": index out of range");
    v[i] = value;
  } else {
    throw ScenarioError("--param: unknown parameter '" + param + "'");
  }
}

Output cmd_sweep(const Options& opt) {
  if (opt.steps < 1 || opt.from > opt.to || (opt.steps == 1 && opt.from != opt.to))
    throw ScenarioError("sweep range is empty: need --steps >= 1 and --from <= --to (a single step needs from == to)");
  const auto base = load_with_overrides(opt);
  Output o;
  o.csv_header = {"param", "value", "theta_lo", "theta_hi", "upper_risk"};
  Json points = Json::array();
  for (int k = 0; k < opt.steps; ++k) {
    const double v = opt.steps == 1 ? opt.from : opt.from + (opt.to - opt.from) * k / (opt.steps - 1);
    Scenario s = base;
    try {
      set_parameter(s, opt.param, v);
      const auto set = s.credal_set();
      const auto r = elicit(set, s.loss, s.domain, s.solver_params());
      points.push_back({{"value", v}, {"result", to_json(r)}});
      interval_rows(o, r.argmin, {opt.param, num(v)}, {num(r.value)});
    } catch (const DomainError& e) {
      throw ScenarioError("sweep point " + opt.param + " = " + num(v) + ": " + e.what());
    }
  }
  o.report = {{"scenario", to_json(base)},
              {"result", {{"param", opt.param}, {"from", opt.from}, {"to", opt.to}, {"steps", opt.steps},
                          {"points", points}}}};
  return o;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Gamma-maximin elicitation over finitely generated credal sets", "credal");
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", opt.tol, "override theta_tol");
    sub->add_option("--format", opt.format, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--quiet", opt.quiet, "do not print the report to stdout");
    sub->add_option("--out", opt.out_path, "also write the report to this file");
  };

  using Handler = std::function<Output(const Options&)>;
  std::vector<std::pair<CLI::App*, Handler>> handlers;
  auto scenario_cmd = [&](const char* name, const char* help, Handler h) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("scenario", opt.file, "scenario JSON file")->required();
    common(sub);
    handlers.emplace_back(sub, std::move(h));
    return sub;
  };
  scenario_cmd("elicit", "minimizer set of the upper risk", cmd_elicit);
  scenario_cmd("bayes", "Bayes pair of every generator", cmd_bayes);
  scenario_cmd("worstcase", "maximum-Bayes-risk distribution and inclusion check", cmd_worstcase);
  auto* sweep = scenario_cmd("sweep", "elicit across a parameter range", cmd_sweep);
  sweep->add_option("--param", opt.param, "gamma | tau | upper[i] | lower[i] | domain.lo | domain.hi")->required();
  sweep->add_option("--from", opt.from, "first value")->required();
  sweep->add_option("--to", opt.to, "last value")->required();
  sweep->add_option("--steps", opt.steps, "number of evenly spaced values (default 11)");

  auto* verify = app.add_subcommand("verify", "randomized property suite");
  verify->add_option("config", opt.file, "trial config JSON file (defaults built in)");
  verify->add_option("--seed", opt.seed, "override the config seed");
  common(verify);
  handlers.emplace_back(verify, cmd_verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (auto& [sub, handler] : handlers) {
    if (!sub->parsed()) continue;
    const auto start = std::chrono::steady_clock::now();
    Output o;
    try {
      o = handler(opt);
    } catch (const SolverError& e) {
      err << "solver error: " << e.what() << "\n";
      return 3;
    } catch (const Error& e) {
      err << "input error: " << e.what() << "\n";
      return 2;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json report{{"artifact_version", kArtifactVersion}, {"command", sub->get_name()}};
    for (auto& [k, v] : o.report.items()) report[k] = v;
    report["duration_seconds"] = secs;

    const std::string text = opt.format == "csv" ? render_csv(o) : report.dump(2) + "\n";
    if (!opt.quiet) out << text;
    if (!opt.out_path.empty()) {
      std::ofstream f(opt.out_path);
      if (!(f << text)) {
        err << "input error: cannot write " << opt.out_path << "\n";
        return 2;
      }
    }
    if (o.status == 1) err << "verification found violations\n";
    return o.status;
  }
  return 2;
}

}  // namespace credal
