#include "credal/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "credal/errors.hpp"

namespace credal {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ScenarioError(path.empty() ? msg : path + ": " + msg);
}

const Json& require(const Json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double as_number(const Json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "expected a finite number");
  return x;
}

int as_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

std::vector<double> as_vector(const Json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

void reject_unknown(const Json& obj, const std::string& path, std::initializer_list<const char*> known) {
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) fail(join(path, key), "unknown field");
  }
}

// Runs `f`, turning library validation errors into errors at `path`.
template <class F>
auto at(const std::string& path, F f) {
  try {
    return f();
  } catch (const ScenarioError&) {
    throw;
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
}

LossSpec parse_loss(const Json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  reject_unknown(v, path, {"kind", "tau", "gamma"});
  const auto& kind_v = require(v, path, "kind");
  if (!kind_v.is_string()) fail(join(path, "kind"), "expected a string");
  const auto kind = at(join(path, "kind"), [&] { return loss_kind_from_string(kind_v.get<std::string>()); });
  switch (kind) {
    case LossKind::squared: return LossSpec::squared();
    case LossKind::absolute: return LossSpec::absolute();
    case LossKind::pinball: {
      const double tau = as_number(require(v, path, "tau"), join(path, "tau"));
      return at(join(path, "tau"), [&] { return LossSpec::pinball(tau); });
    }
    case LossKind::entropic: {
      const double gamma = as_number(require(v, path, "gamma"), join(path, "gamma"));
      return at(join(path, "gamma"), [&] { return LossSpec::entropic(gamma); });
    }
  }
  fail(path, "unreachable");
}

SolverParams parse_solver(const Json& v, const std::string& path) {
  if (!v.is_object()) fail(path, "expected an object");
  reject_unknown(v, path, {"theta_tol", "value_tol", "flat_tol", "max_iters"});
  SolverParams p;
  if (v.contains("theta_tol")) p.theta_tol = as_number(v["theta_tol"], join(path, "theta_tol"));
  if (v.contains("value_tol")) p.value_tol = as_number(v["value_tol"], join(path, "value_tol"));
  if (v.contains("flat_tol")) p.flat_tol = as_number(v["flat_tol"], join(path, "flat_tol"));
  if (v.contains("max_iters")) p.max_iters = as_int(v["max_iters"], join(path, "max_iters"));
  at(path, [&] {
    p.validate();
    return 0;
  });
  return p;
}

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

Json parse_text(const std::string& text, const std::filesystem::path& path) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is one past the offending character
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    std::string msg = e.what();
    if (auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw ScenarioError(path.string() + ": " + location(text, byte) + ": " + msg);
  }
}

Json weights_json(std::span<const double> w) { return Json(std::vector<double>(w.begin(), w.end())); }

}  // namespace

CredalSet Scenario::credal_set() const {
  const auto sp = space();
  if (bounds) return bounds_to_generators(IntervalBounds(sp, bounds->lower, bounds->upper));
  std::vector<Distribution> gens;
  for (const auto& g : generators) gens.emplace_back(sp, g);
  return CredalSet(std::move(gens));
}

Scenario parse_scenario(const Json& doc) {
  if (!doc.is_object()) fail("", "scenario must be a JSON object");
  reject_unknown(doc, "", {"outcomes", "credal", "loss", "domain", "solver"});
  Scenario s;
  s.outcomes = as_vector(require(doc, "", "outcomes"), "outcomes");
  const auto space = at("outcomes", [&] { return OutcomeSpace(s.outcomes); });

  const auto& credal = require(doc, "", "credal");
  if (!credal.is_object()) fail("credal", "expected an object");
  reject_unknown(credal, "credal", {"generators", "bounds"});
  const bool has_gens = credal.contains("generators"), has_bounds = credal.contains("bounds");
  if (has_gens == has_bounds) fail("credal", "give exactly one of 'generators' or 'bounds'");
  if (has_gens) {
    const auto& gens = credal["generators"];
    if (!gens.is_array() || gens.empty()) fail("credal.generators", "expected a non-empty array of weight vectors");
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const std::string path = "credal.generators[" + std::to_string(j) + "]";
      auto w = as_vector(gens[j], path);
      at(path, [&] { return Distribution(space, w); });
      s.generators.push_back(std::move(w));
    }
  } else {
    const auto& b = credal["bounds"];
    if (!b.is_object()) fail("credal.bounds", "expected an object");
    reject_unknown(b, "credal.bounds", {"lower", "upper"});
    BoundsSpec spec{as_vector(require(b, "credal.bounds", "lower"), "credal.bounds.lower"),
                    as_vector(require(b, "credal.bounds", "upper"), "credal.bounds.upper")};
    at("credal.bounds", [&] { return IntervalBounds(space, spec.lower, spec.upper); });
    s.bounds = std::move(spec);
  }

  s.loss = parse_loss(require(doc, "", "loss"), "loss");

  const auto& dom = require(doc, "", "domain");
  if (!dom.is_object()) fail("domain", "expected an object");
  reject_unknown(dom, "domain", {"lo", "hi"});
  const double lo = as_number(require(dom, "domain", "lo"), "domain.lo");
  const double hi = as_number(require(dom, "domain", "hi"), "domain.hi");
  s.domain = at("domain", [&] { return PropertyDomain(lo, hi); });

  if (doc.contains("solver")) s.solver = parse_solver(doc["solver"], "solver");
  return s;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Scenario load_scenario(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  const auto doc = parse_text(text, path);
  try {
    return parse_scenario(doc);
  } catch (const ScenarioError& e) {
    throw ScenarioError(path.string() + ": " + e.what());
  }
}

Json to_json(const LossSpec& loss) {
  Json j{{"kind", std::string(to_string(loss.kind()))}};
  if (loss.kind() == LossKind::pinball) j["tau"] = loss.tau();
  if (loss.kind() == LossKind::entropic) j["gamma"] = loss.gamma();
  return j;
}

Json to_json(const SolverParams& p) {
  return Json{{"theta_tol", p.theta_tol}, {"value_tol", p.value_tol}, {"flat_tol", p.flat_tol}, {"max_iters", p.max_iters}};
}

Json to_json(const Scenario& s) {
  Json j;
  j["outcomes"] = s.outcomes;
  if (s.bounds) {
    j["credal"] = {{"bounds", {{"lower", s.bounds->lower}, {"upper", s.bounds->upper}}}};
  } else {
    j["credal"] = {{"generators", s.generators}};
  }
  j["loss"] = to_json(s.loss);
  j["domain"] = {{"lo", s.domain.lo}, {"hi", s.domain.hi}};
  if (s.solver) j["solver"] = to_json(*s.solver);
  return j;
}

Scenario make_scenario(const CredalSet& set, const LossSpec& loss, const PropertyDomain& domain) {
  Scenario s;
  const auto z = set.space().points();
  s.outcomes.assign(z.begin(), z.end());
  for (const auto& g : set.generators()) s.generators.emplace_back(g.weights().begin(), g.weights().end());
  s.loss = loss;
  s.domain = domain;
  return s;
}

TrialConfig parse_trial_config(const Json& doc) {
  if (!doc.is_object()) fail("", "config must be a JSON object");
  reject_unknown(doc, "", {"seed", "n_outcomes", "n_generators", "losses", "trials", "tolerances", "violation_tol"});
  TrialConfig cfg;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("n_outcomes")) cfg.n_outcomes = as_int(doc["n_outcomes"], "n_outcomes");
  if (doc.contains("n_generators")) cfg.n_generators = as_int(doc["n_generators"], "n_generators");
  if (doc.contains("trials")) cfg.trials = as_int(doc["trials"], "trials");
  if (doc.contains("violation_tol")) cfg.violation_tol = as_number(doc["violation_tol"], "violation_tol");
  if (doc.contains("tolerances")) cfg.tolerances = parse_solver(doc["tolerances"], "tolerances");
  if (doc.contains("losses")) {
    const auto& l = doc["losses"];
    if (!l.is_array()) fail("losses", "expected an array of loss kinds");
    cfg.losses.clear();
    for (std::size_t i = 0; i < l.size(); ++i) {
      const std::string path = "losses[" + std::to_string(i) + "]";
      if (!l[i].is_string()) fail(path, "expected a string");
      cfg.losses.push_back(at(path, [&] { return loss_kind_from_string(l[i].get<std::string>()); }));
    }
  }
  at("", [&] {
    cfg.validate();
    return 0;
  });
  return cfg;
}

TrialConfig load_trial_config(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  const auto doc = parse_text(text, path);
  try {
    return parse_trial_config(doc);
  } catch (const ScenarioError& e) {
    throw ScenarioError(path.string() + ": " + e.what());
  }
}

Json to_json(const TrialConfig& cfg) {
  Json losses = Json::array();
  for (auto k : cfg.losses) losses.push_back(std::string(to_string(k)));
  return Json{{"seed", cfg.seed},           {"n_outcomes", cfg.n_outcomes}, {"n_generators", cfg.n_generators},
              {"losses", losses},           {"trials", cfg.trials},         {"tolerances", to_json(cfg.tolerances)},
              {"violation_tol", cfg.violation_tol}};
}

Json to_json(const PropertyValueSet& s) {
  Json j = Json::array();
  for (const auto& iv : s.intervals()) j.push_back(Json::array({iv.lo, iv.hi}));
  return j;
}

Json to_json(const MinimaxResult& r) {
  return Json{{"argmin", to_json(r.argmin)},
              {"value", r.value},
              {"active_generators", r.active_generators},
              {"iterations", r.iterations}};
}

Json to_json(const BayesPairResult& r) {
  return Json{{"theta_set", to_json(r.theta_set)}, {"risk", r.risk}, {"clamped", r.clamped}};
}

Json to_json(const WorstCaseResult& r) {
  return Json{{"distribution", weights_json(r.distribution.weights())},
              {"weights", r.weights},
              {"bayes_risk", r.bayes_risk},
              {"certificate_gap", r.certificate_gap},
              {"frank_wolfe_gap", r.frank_wolfe_gap},
              {"iterations", r.iterations},
              {"near_max_generators", r.near_max_generators}};
}

Json to_json(const InclusionReport& r) {
  return Json{{"elicited", to_json(r.elicited)},
              {"theta_star", to_json(r.theta_star)},
              {"p_star", r.p_star},
              {"max_violation", r.max_violation},
              {"tolerance", r.tolerance},
              {"holds", r.holds},
              {"strict", r.strict}};
}

Json to_json(const CheckReport& r) {
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    Json instance = Json::parse(f.instance, nullptr, false);
    failures.push_back(Json{{"trial", f.trial},
                            {"violation", std::isfinite(f.violation) ? Json(f.violation) : Json("inf")},
                            {"instance", instance.is_discarded() ? Json(f.instance) : instance},
                            {"detail", f.detail}});
  }
  return Json{{"check_name", r.check_name},
              {"passed", r.passed()},
              {"trials_run", r.trials_run},
              {"tolerance", r.tolerance},
              {"max_violation", std::isfinite(r.max_violation) ? Json(r.max_violation) : Json("inf")},
              {"failures", failures},
              {"notes", r.notes}};
}

}  // namespace credal
