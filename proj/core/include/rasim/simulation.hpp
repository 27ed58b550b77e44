#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "rasim/metrics.hpp"
#include "rasim/policies.hpp"

namespace rasim {

struct RunParams {
  std::size_t nodes = 500;
  std::int64_t horizon = 500'000;
  double sigma = 1.0;
  double epsilon = 0.0;
  ResolvedPolicy policy;
  std::uint64_t seed = 1;
  std::int64_t burn_in = 0;
  /// Keep every closed interval record in the result.
  bool keep_records = false;
  /// Keep every (slot, transmitter) pair in the result.
  bool keep_transmissions = false;
  /// Check node mirrors, activation persistence and centralized feedback on
  /// every slot; throws std::logic_error on the first violation.
  bool verify = false;
  /// Every `psi_check_stride` slots one node's psi is recomputed from its
  /// logged innovations (0 disables).
  std::int64_t psi_check_stride = 0;
  /// Slots of innovations retained for the psi check. Windows older than
  /// this are skipped and counted.
  std::int64_t psi_check_window = 16384;
};

struct SimulationResult {
  MetricsReport report;
  IntervalStats stats;
  std::vector<IntervalRecord> records;
  /// FNV-1a over activations and transmissions in slot order.
  std::uint64_t trace_hash = 0;
  std::vector<std::pair<std::int64_t, std::size_t>> transmissions;
  std::uint64_t collisions = 0;
  std::uint64_t erasures = 0;
  /// Largest |psi - |window sum|| / max(psi, sigma) seen by the psi check.
  double max_psi_error = 0.0;
  std::uint64_t psi_checks = 0;
  std::uint64_t psi_checks_skipped = 0;
};

/// Runs slots k = 0..K of one replication.
///
/// Each slot: ALOHA update from c(k-1), source step, errors, decisions,
/// channel resolution, metrics, receiver update. Throws std::invalid_argument
/// on invalid parameters.
SimulationResult simulate(const RunParams& params);

}  // namespace rasim
