#include <string>

#include "fixopt/errors.hpp"
#include "fixopt/experiment.hpp"

namespace fixopt {

namespace {

AlgorithmSpec make(std::string name, EngineKind engine, Schedule alpha, BetaSchedule beta, double hat_beta) {
  AlgorithmSpec a;
  a.name = std::move(name);
  a.engine = engine;
  a.alpha = alpha;
  a.beta = beta;
  a.hat_beta = hat_beta;
  a.bar_beta = 0.999;
  a.alpha_relax = 0.5;
  return a;
}

std::vector<AlgorithmSpec> build_presets() {
  const Schedule fixed = Schedule::constant(1e-2);
  const Schedule decay = Schedule::power(1e-1, 0.5);
  const BetaSchedule none = BetaSchedule::constant(0.0);
  return {
      make("CSD", EngineKind::sgd, fixed, none, 0.0),
      make("CAG", EngineKind::adagrad, fixed, none, 0.0),
      make("CAM1", EngineKind::amsgrad, fixed, BetaSchedule::constant(0.9), 0.0),
      make("CAM2", EngineKind::amsgrad, fixed, BetaSchedule::constant(1e-3), 0.0),
      make("CAD1", EngineKind::adam, fixed, BetaSchedule::constant(0.9), 0.9),
      make("CAD2", EngineKind::adam, fixed, BetaSchedule::constant(1e-3), 0.9),
      make("DSD", EngineKind::sgd, decay, none, 0.0),
      make("DAG", EngineKind::adagrad, decay, none, 0.0),
      make("DAM1", EngineKind::amsgrad, decay, BetaSchedule::geometric(0.5), 0.0),
      make("DAM2", EngineKind::amsgrad, decay, BetaSchedule::geometric(0.9), 0.0),
      make("DAD1", EngineKind::adam, decay, BetaSchedule::geometric(0.5), 0.9),
      make("DAD2", EngineKind::adam, decay, BetaSchedule::geometric(0.9), 0.9),
  };
}

}  // namespace

const std::vector<AlgorithmSpec>& presets() {
  static const std::vector<AlgorithmSpec> table = build_presets();
  return table;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : presets()) names.push_back(p.name);
  return names;
}

AlgorithmSpec resolve_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  std::string valid;
  for (const auto& p : presets()) valid += (valid.empty() ? "" : ", ") + p.name;
  throw ConfigError("unknown preset '" + std::string(name) + "'; valid presets: " + valid);
}

std::string_view to_string(EngineKind kind) {
  switch (kind) {
    case EngineKind::sgd: return "sgd";
    case EngineKind::adagrad: return "adagrad";
    case EngineKind::adam: return "adam";
    case EngineKind::amsgrad: return "amsgrad";
  }
  return "unknown";
}

EngineKind parse_engine(std::string_view name) {
  for (EngineKind k : {EngineKind::sgd, EngineKind::adagrad, EngineKind::adam, EngineKind::amsgrad}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown engine '" + std::string(name) + "'; valid engines: sgd, adagrad, adam, amsgrad");
}

}  // namespace fixopt
