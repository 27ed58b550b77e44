#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rasim/policies.hpp"

namespace rasim {

/// Invalid configuration. `field` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct SimConfig {
  std::int64_t M = 500;
  std::int64_t K = 500'000;
  double sigma2 = 1.0;
  double epsilon = 0.0;
  PolicyConfig policy;
  std::uint64_t seed = 1;
  std::int64_t replications = 10;
  std::int64_t burn_in = 0;
  /// CSV path; empty selects a default name in the output directory.
  std::string output;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

enum class SweepAxis : std::uint8_t { kSigma2, kEpsilon, kM };

std::string_view to_string(SweepAxis axis);

struct SweepSpec {
  SimConfig base;
  SweepAxis axis = SweepAxis::kSigma2;
  std::vector<double> values;
  std::vector<PolicyConfig> policies;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Throws ConfigError naming the first invalid field.
void validate(const SimConfig& cfg);
void validate(const SweepSpec& spec);

/// `base` with the axis field set to `value`.
SimConfig apply_axis(const SimConfig& base, SweepAxis axis, double value);

std::string serialize(const SimConfig& cfg);
std::string serialize(const SweepSpec& spec);
std::string serialize(const PolicyConfig& policy);

/// Parsers reject unknown keys and wrong types with ConfigError. Missing keys
/// keep their defaults; null parameters mean "use the default".
SimConfig parse_sim_config(std::string_view text);
SweepSpec parse_sweep_spec(std::string_view text);
PolicyConfig parse_policy_config(std::string_view text);

/// Reads a file; throws ConfigError when it cannot be read or parsed.
SimConfig load_sim_config(const std::filesystem::path& path);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

}  // namespace rasim
