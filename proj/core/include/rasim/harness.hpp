#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rasim/config.hpp"
#include "rasim/csv.hpp"
#include "rasim/metrics.hpp"
#include "rasim/policies.hpp"
#include "rasim/simulation.hpp"

namespace rasim {

/// A run finished but violated a guard (for example an oracle step cap).
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitGuard = 2, kExitIo = 3 };

struct HarnessOptions {
  unsigned threads = 1;
  /// Run every replication with the in-loop invariant checks.
  bool verify = false;
};

inline constexpr std::int64_t kPilotHorizon = 100'000;

struct SatCalibration {
  std::int64_t gamma = 1;
  double naaoi = 0.0;
  /// Every (gamma, pilot NAAoI) pair evaluated, sorted by gamma.
  std::vector<std::pair<std::int64_t, double>> evaluated;
  std::int64_t pilot_horizon = kPilotHorizon;
};

/// Coarse-to-fine search over gamma in [M, 3M] / (1 - epsilon) minimizing
/// pilot NAAoI. Deterministic in (M, epsilon, seed, pilot_horizon); results
/// are cached per process.
SatCalibration calibrate_sat_gamma(std::int64_t nodes, double epsilon, std::uint64_t seed,
                                   std::int64_t pilot_horizon = kPilotHorizon,
                                   unsigned threads = 1);

struct ProbabilityCalibration {
  double p = 0.0;
  double naaoi = 0.0;
  std::vector<std::pair<double, double>> evaluated;
};

/// Picks p from {c/M : c = 0.5, 0.625, ..., 2} by minimal pilot NAAoI.
ProbabilityCalibration calibrate_sr_p(std::int64_t nodes, double epsilon, std::uint64_t seed,
                                      std::int64_t pilot_horizon = kPilotHorizon,
                                      unsigned threads = 1);

/// Fills every unset policy parameter for the given configuration.
ResolvedPolicy resolve_policy(const PolicyConfig& policy, const SimConfig& cfg,
                              unsigned threads = 1);

/// Simulation parameters of replication `replication` of `cfg`.
RunParams make_run_params(const SimConfig& cfg, const ResolvedPolicy& policy,
                          std::int64_t replication, bool verify = false);

struct Aggregate {
  MetricsReport mean;
  MetricsReport std_error;
};

/// Mean and standard error of the CSV metrics across replications.
Aggregate aggregate(std::span<const MetricsReport> reports);

struct RunResult {
  SimConfig config;
  ResolvedPolicy policy;
  std::vector<MetricsReport> replications;
  Aggregate summary;

  /// One row per replication followed by the mean and stderr rows.
  std::vector<CsvRow> rows() const;
};

/// Runs all replications of `cfg`. Throws ConfigError on invalid input.
RunResult run_single(const SimConfig& cfg, const HarnessOptions& options = {});

struct SweepResult {
  SweepSpec spec;
  /// Value-major, policy-minor.
  std::vector<RunResult> points;

  std::vector<CsvRow> rows() const;
  const RunResult& at(std::size_t value_index, std::size_t policy_index) const {
    return points.at(value_index * spec.policies.size() + policy_index);
  }
};

SweepResult run_sweep(const SweepSpec& spec, const HarnessOptions& options = {});

/// Named figure sweeps: naee-vs-sigma2, naee-vs-epsilon, gap-vs-M.
std::vector<std::string_view> preset_names();
/// Throws ConfigError for unknown names.
SweepSpec sweep_preset(std::string_view name);

std::string_view git_revision() noexcept;

/// $RASIM_OUTPUT_DIR (or the working directory) joined with `file_name`.
std::filesystem::path default_output_path(std::string_view file_name);

/// Writes `text` to `path`, creating parent directories; throws IoError.
void write_text(const std::filesystem::path& path, std::string_view text);

/// `<csv>.meta.json` next to the CSV.
std::filesystem::path metadata_path(const std::filesystem::path& csv_path);

std::string run_metadata(const RunResult& result, double wall_seconds, unsigned threads);
std::string sweep_metadata(const SweepResult& result, double wall_seconds, unsigned threads);

}  // namespace rasim
