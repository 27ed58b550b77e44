#include "rasim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rasim {

using nlohmann::json;

namespace {

const json& require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where, "expected a JSON object");
  return j;
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> keys,
                    const std::string& prefix) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto k : keys) known = known || key == k;
    if (!known) throw ConfigError(prefix + key, "unknown field");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& prefix) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    if constexpr (std::is_same_v<T, std::int64_t>) {
      if (!it->is_number_integer()) throw ConfigError(prefix + key, "expected an integer");
    } else if constexpr (std::is_same_v<T, std::uint64_t>) {
      if (!it->is_number_unsigned()) {
        throw ConfigError(prefix + key, "expected a non-negative integer");
      }
    } else if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw ConfigError(prefix + key, "expected a number");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw ConfigError(prefix + key, "expected a boolean");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!it->is_string()) throw ConfigError(prefix + key, "expected a string");
    }
    out = it->get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(prefix + key, e.what());
  }
}

template <typename T>
void read_optional(const json& j, const char* key, std::optional<T>& out,
                   const std::string& prefix) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    out.reset();
    return;
  }
  T value{};
  read(j, key, value, prefix);
  out = value;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json to_json(const PolicyConfig& p) {
  return json{{"kind", std::string(to_string(p.kind))},
              {"beta", optional_json(p.beta)},
              {"gamma", optional_json(p.gamma)},
              {"p", optional_json(p.p)},
              {"calibrate_p", p.calibrate_p},
              {"calibrate_gamma", p.calibrate_gamma}};
}

json to_json(const SimConfig& c) {
  return json{{"M", c.M},
              {"K", c.K},
              {"sigma2", c.sigma2},
              {"epsilon", c.epsilon},
              {"policy", to_json(c.policy)},
              {"seed", c.seed},
              {"replications", c.replications},
              {"burn_in", c.burn_in},
              {"output", c.output}};
}

PolicyConfig policy_from_json(const json& j, const std::string& prefix) {
  if (j.is_string()) {
    const auto kind = parse_policy_kind(j.get<std::string>());
    if (!kind) throw ConfigError(prefix + "kind", "unknown policy '" + j.get<std::string>() + "'");
    return PolicyConfig{*kind, {}, {}, {}, false, false};
  }
  require_object(j, prefix.empty() ? "policy" : prefix.substr(0, prefix.size() - 1));
  reject_unknown(j, {"kind", "beta", "gamma", "p", "calibrate_p", "calibrate_gamma"}, prefix);
  PolicyConfig p;
  std::string kind = std::string(to_string(p.kind));
  read(j, "kind", kind, prefix);
  const auto parsed = parse_policy_kind(kind);
  if (!parsed) throw ConfigError(prefix + "kind", "unknown policy '" + kind + "'");
  p.kind = *parsed;
  read_optional(j, "beta", p.beta, prefix);
  read_optional(j, "gamma", p.gamma, prefix);
  read_optional(j, "p", p.p, prefix);
  read(j, "calibrate_p", p.calibrate_p, prefix);
  read(j, "calibrate_gamma", p.calibrate_gamma, prefix);
  return p;
}

SimConfig sim_from_json(const json& j, const std::string& prefix) {
  require_object(j, prefix.empty() ? "config" : prefix.substr(0, prefix.size() - 1));
  reject_unknown(j,
                 {"M", "K", "sigma2", "epsilon", "policy", "seed", "replications", "burn_in",
                  "output"},
                 prefix);
  SimConfig c;
  read(j, "M", c.M, prefix);
  read(j, "K", c.K, prefix);
  read(j, "sigma2", c.sigma2, prefix);
  read(j, "epsilon", c.epsilon, prefix);
  if (const auto it = j.find("policy"); it != j.end()) {
    c.policy = policy_from_json(*it, prefix + "policy.");
  }
  read(j, "seed", c.seed, prefix);
  read(j, "replications", c.replications, prefix);
  read(j, "burn_in", c.burn_in, prefix);
  read(j, "output", c.output, prefix);
  return c;
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void validate_policy(const PolicyConfig& p, const std::string& prefix) {
  if (p.beta && !(*p.beta >= 0.0 && std::isfinite(*p.beta))) {
    throw ConfigError(prefix + "beta", "must be finite and >= 0");
  }
  if (p.gamma && *p.gamma < 1) throw ConfigError(prefix + "gamma", "must be >= 1");
  if (p.p && !(*p.p > 0.0 && *p.p <= 1.0)) throw ConfigError(prefix + "p", "must lie in (0, 1]");
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kSigma2: return "sigma2";
    case SweepAxis::kEpsilon: return "epsilon";
    case SweepAxis::kM: return "M";
  }
  return "unknown";
}

void validate(const SimConfig& c) {
  if (c.M < 1) throw ConfigError("M", "must be >= 1");
  if (c.K < 1) throw ConfigError("K", "must be >= 1");
  if (!(c.sigma2 > 0.0) || !std::isfinite(c.sigma2)) {
    throw ConfigError("sigma2", "must be finite and > 0");
  }
  if (!(c.epsilon >= 0.0 && c.epsilon < 1.0)) throw ConfigError("epsilon", "must lie in [0, 1)");
  if (c.replications < 1) throw ConfigError("replications", "must be >= 1");
  if (c.burn_in < 0 || c.burn_in >= c.K) throw ConfigError("burn_in", "must lie in [0, K)");
  validate_policy(c.policy, "policy.");
}

void validate(const SweepSpec& s) {
  validate(s.base);
  if (s.values.empty()) throw ConfigError("values", "must not be empty");
  if (s.policies.empty()) throw ConfigError("policies", "must not be empty");
  for (std::size_t v = 0; v < s.values.size(); ++v) {
    try {
      validate(apply_axis(s.base, s.axis, s.values[v]));
    } catch (const ConfigError& e) {
      throw ConfigError("values[" + std::to_string(v) + "]", e.what());
    }
  }
  for (std::size_t p = 0; p < s.policies.size(); ++p) {
    validate_policy(s.policies[p], "policies[" + std::to_string(p) + "].");
  }
}

SimConfig apply_axis(const SimConfig& base, SweepAxis axis, double value) {
  SimConfig c = base;
  switch (axis) {
    case SweepAxis::kSigma2: c.sigma2 = value; break;
    case SweepAxis::kEpsilon: c.epsilon = value; break;
    case SweepAxis::kM:
      if (value != std::floor(value)) throw ConfigError("M", "sweep value must be an integer");
      c.M = static_cast<std::int64_t>(value);
      break;
  }
  return c;
}

std::string serialize(const PolicyConfig& policy) { return to_json(policy).dump(2); }

std::string serialize(const SimConfig& cfg) { return to_json(cfg).dump(2); }

std::string serialize(const SweepSpec& spec) {
  json policies = json::array();
  for (const auto& p : spec.policies) policies.push_back(to_json(p));
  return json{{"base", to_json(spec.base)},
              {"axis", std::string(to_string(spec.axis))},
              {"values", spec.values},
              {"policies", policies}}
      .dump(2);
}

PolicyConfig parse_policy_config(std::string_view text) {
  return policy_from_json(parse_text(text), "");
}

SimConfig parse_sim_config(std::string_view text) { return sim_from_json(parse_text(text), ""); }

SweepSpec parse_sweep_spec(std::string_view text) {
  const json j = parse_text(text);
  require_object(j, "sweep");
  reject_unknown(j, {"base", "axis", "values", "policies"}, "");
  SweepSpec s;
  if (const auto it = j.find("base"); it != j.end()) s.base = sim_from_json(*it, "base.");
  std::string axis = "sigma2";
  read(j, "axis", axis, "");
  if (axis == "sigma2") {
    s.axis = SweepAxis::kSigma2;
  } else if (axis == "epsilon") {
    s.axis = SweepAxis::kEpsilon;
  } else if (axis == "M") {
    s.axis = SweepAxis::kM;
  } else {
    throw ConfigError("axis", "must be one of sigma2, epsilon, M");
  }
  if (const auto it = j.find("values"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("values", "expected an array of numbers");
    for (const auto& v : *it) {
      if (!v.is_number()) throw ConfigError("values", "expected an array of numbers");
      s.values.push_back(v.get<double>());
    }
  }
  if (const auto it = j.find("policies"); it != j.end()) {
    if (!it->is_array()) throw ConfigError("policies", "expected an array");
    for (std::size_t p = 0; p < it->size(); ++p) {
      s.policies.push_back(policy_from_json((*it)[p], "policies[" + std::to_string(p) + "]."));
    }
  }
  return s;
}

SimConfig load_sim_config(const std::filesystem::path& path) {
  return parse_sim_config(read_file(path));
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  return parse_sweep_spec(read_file(path));
}

}  // namespace rasim
