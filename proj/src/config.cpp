#include <fstream>
#include <set>
#include <string>

#include "fixopt/errors.hpp"
#include "fixopt/experiment.hpp"

namespace fixopt {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.contains(it.key())) {
      std::string list;
      for (const auto& k : allowed) list += (list.empty() ? "" : ", ") + k;
      throw ConfigError(where + ": unknown key '" + it.key() + "' (allowed: " + list + ")");
    }
  }
}

template <typename T>
T get(const json& obj, const char* key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + ": bad or missing '" + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback, const std::string& where) {
  return obj.contains(key) ? get<T>(obj, key, where) : fallback;
}

Schedule parse_alpha(const json& v, const std::string& where) {
  if (v.is_number()) return Schedule::constant(v.get<double>());
  if (!v.is_object()) throw ConfigError(where + ": 'alpha' must be a number or an object");
  reject_unknown(v, {"kind", "base", "exponent"}, where + ".alpha");
  const auto kind = get<std::string>(v, "kind", where + ".alpha");
  if (kind == "constant") return Schedule::constant(get<double>(v, "base", where + ".alpha"));
  if (kind == "power") {
    return Schedule::power(get<double>(v, "base", where + ".alpha"), get<double>(v, "exponent", where + ".alpha"));
  }
  throw ConfigError(where + ".alpha: kind must be 'constant' or 'power'");
}

BetaSchedule parse_beta(const json& v, const std::string& where) {
  if (v.is_number()) return BetaSchedule::constant(v.get<double>());
  if (!v.is_object()) throw ConfigError(where + ": 'beta' must be a number or an object");
  reject_unknown(v, {"kind", "base", "ratio"}, where + ".beta");
  const auto kind = get<std::string>(v, "kind", where + ".beta");
  if (kind == "constant") return BetaSchedule::constant(get<double>(v, "base", where + ".beta"));
  if (kind == "geometric") return BetaSchedule::geometric(get<double>(v, "ratio", where + ".beta"));
  throw ConfigError(where + ".beta: kind must be 'constant' or 'geometric'");
}

void validate(const AlgorithmSpec& a, const std::string& where) {
  auto fail = [&](const std::string& what) { throw ConfigError(where + " (" + a.name + "): " + what); };
  if (a.name.empty()) fail("name must be non-empty");
  if (!(a.alpha.base > 0.0 && a.alpha.base < 1.0)) fail("alpha base must lie in (0, 1)");
  if (a.alpha.kind == Schedule::Kind::power && !(a.alpha.exponent >= 0.0 && a.alpha.exponent <= 1.0)) {
    fail("alpha exponent must lie in [0, 1]");
  }
  if (a.beta.kind == BetaSchedule::Kind::constant && !(a.beta.base >= 0.0 && a.beta.base < 1.0)) {
    fail("beta must lie in [0, 1)");
  }
  if (a.beta.kind == BetaSchedule::Kind::geometric && !(a.beta.ratio > 0.0 && a.beta.ratio < 1.0)) {
    fail("beta ratio must lie in (0, 1)");
  }
  if (!(a.hat_beta >= 0.0 && a.hat_beta < 1.0)) fail("hat_beta must lie in [0, 1)");
  if (!(a.bar_beta >= 0.0 && a.bar_beta < 1.0)) fail("bar_beta must lie in [0, 1)");
  if (!(a.alpha_relax > 0.0 && a.alpha_relax < 1.0)) fail("alpha_relax must lie in (0, 1)");
}

AlgorithmSpec parse_algorithm(const json& v, std::size_t index) {
  const std::string where = "algorithms[" + std::to_string(index) + "]";
  if (v.is_string()) return resolve_preset(v.get<std::string>());
  if (!v.is_object()) throw ConfigError(where + ": must be a preset name or an object");
  reject_unknown(v, {"name", "engine", "alpha", "beta", "hat_beta", "bar_beta", "alpha_relax"}, where);
  AlgorithmSpec a;
  a.name = get<std::string>(v, "name", where);
  a.engine = parse_engine(get<std::string>(v, "engine", where));
  if (!v.contains("alpha") || !v.contains("beta")) throw ConfigError(where + ": 'alpha' and 'beta' are required");
  a.alpha = parse_alpha(v.at("alpha"), where);
  a.beta = parse_beta(v.at("beta"), where);
  a.hat_beta = get<double>(v, "hat_beta", where);
  a.bar_beta = get_or<double>(v, "bar_beta", 0.999, where);
  a.alpha_relax = get_or<double>(v, "alpha_relax", 0.5, where);
  return a;
}

}  // namespace

std::size_t default_iterations(int dim) {
  if (dim <= 2) return 500;
  if (dim <= 10) return 1000;
  return 1500;
}

RunConfig parse_config(const json& doc) {
  const std::string where = "config";
  if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
  reject_unknown(doc,
                 {"case", "m", "I", "J", "iterations", "samplings", "seed", "algorithms", "out_dir", "emit_svg",
                  "bound_diagnostics"},
                 where);
  RunConfig cfg;
  const auto kase = get_or<std::string>(doc, "case", "consistent", where);
  if (kase == "consistent") {
    cfg.consistency = Consistency::consistent;
  } else if (kase == "inconsistent") {
    cfg.consistency = Consistency::inconsistent;
  } else {
    throw ConfigError("config: 'case' must be 'consistent' or 'inconsistent'");
  }
  cfg.dim = get_or<int>(doc, "m", 2, where);
  cfg.factors = get_or<std::size_t>(doc, "I", 5, where);
  const std::size_t default_j = cfg.consistency == Consistency::consistent ? 5 : 2;
  cfg.balls_per_factor = get_or<std::size_t>(doc, "J", default_j, where);
  cfg.iterations = get_or<std::size_t>(doc, "iterations", default_iterations(cfg.dim), where);
  cfg.samplings = get_or<std::size_t>(doc, "samplings", 10, where);
  cfg.master_seed = get_or<std::uint64_t>(doc, "seed", 0, where);
  cfg.out_dir = get_or<std::string>(doc, "out_dir", "out", where);
  cfg.emit_svg = get_or<bool>(doc, "emit_svg", false, where);
  cfg.bound_diagnostics = get_or<bool>(doc, "bound_diagnostics", false, where);

  if (cfg.dim < 1) throw ConfigError("config: 'm' must be >= 1");
  if (cfg.factors < 1) throw ConfigError("config: 'I' must be >= 1");
  if (cfg.balls_per_factor < 1) throw ConfigError("config: 'J' must be >= 1");
  if (cfg.consistency == Consistency::inconsistent && cfg.balls_per_factor != 2) {
    throw ConfigError("config: the inconsistent case uses exactly two balls per factor ('J' = 2)");
  }
  if (cfg.iterations < 1) throw ConfigError("config: 'iterations' must be >= 1");
  if (cfg.samplings < 1) throw ConfigError("config: 'samplings' must be >= 1");

  if (doc.contains("algorithms")) {
    const json& list = doc.at("algorithms");
    if (!list.is_array() || list.empty()) throw ConfigError("config: 'algorithms' must be a non-empty array");
    for (std::size_t k = 0; k < list.size(); ++k) cfg.algorithms.push_back(parse_algorithm(list[k], k));
  } else {
    cfg.algorithms = presets();
  }
  std::set<std::string> seen;
  for (const auto& a : cfg.algorithms) {
    validate(a, "algorithms");
    if (!seen.insert(a.name).second) throw ConfigError("config: duplicate algorithm name '" + a.name + "'");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": invalid JSON: " + e.what());
  }
  return parse_config(doc);
}

}  // namespace fixopt
