#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rasim/random.hpp"

namespace rasim {

/// Sample values X_i(k) of the M random-walk sources at slot k.
struct SourceState {
  std::vector<double> values;
  double sigma = 1.0;
  std::int64_t slot = 0;

  /// All sources start at zero at slot 0.
  static SourceState initial(std::size_t nodes, double sigma);
};

/// Keeps the standard-normal draws z_i(j) behind W_i(j) = sigma * z_i(j).
///
/// A capacity of zero disables logging, `kUnbounded` keeps every slot, and any
/// other value keeps the most recent `capacity` slots in a ring.
class InnovationLog {
 public:
  static constexpr std::int64_t kUnbounded = -1;

  InnovationLog() = default;
  InnovationLog(std::size_t nodes, std::int64_t capacity);

  bool enabled() const noexcept { return capacity_ != 0; }
  /// Appends the draws of one slot (one per node).
  void push(std::span<const double> draws);
  /// Draw of `node` for slot `slot`; throws std::out_of_range if not retained.
  double at(std::size_t node, std::int64_t slot) const;
  /// Oldest retained slot.
  std::int64_t first_slot() const noexcept { return end_ - size(); }
  /// One past the newest retained slot.
  std::int64_t end_slot() const noexcept { return end_; }

 private:
  std::int64_t size() const noexcept;

  std::size_t nodes_ = 0;
  std::int64_t capacity_ = 0;
  std::int64_t end_ = 0;
  std::vector<double> draws_;
};

std::vector<NoiseStream> make_source_streams(std::uint64_t seed, std::size_t nodes);

/// Advances every source by one innovation: X_i(k+1) = X_i(k) + sigma * z_i(k).
/// With sigma = 0 and no log the draws are skipped.
void step_sources(SourceState& state, std::span<NoiseStream> streams,
                  InnovationLog* log = nullptr);

/// The sources together with their noise streams and optional innovation log.
class SourceBank {
 public:
  SourceBank(std::size_t nodes, double sigma, std::uint64_t seed,
             std::int64_t log_capacity = 0);

  const SourceState& state() const noexcept { return state_; }
  std::int64_t slot() const noexcept { return state_.slot; }
  std::size_t size() const noexcept { return state_.values.size(); }
  double sigma() const noexcept { return state_.sigma; }
  const InnovationLog& log() const noexcept { return log_; }

  void step() { step_sources(state_, streams_, log_.enabled() ? &log_ : nullptr); }

  /// Sum of W_node(j) for j in [from_slot, to_slot), recomputed from the
  /// logged draws. Throws std::out_of_range when the window is not retained
  /// or lies outside [0, slot()].
  double increment_window_sum(std::size_t node, std::int64_t from_slot,
                              std::int64_t to_slot) const;

 private:
  SourceState state_;
  std::vector<NoiseStream> streams_;
  InnovationLog log_;
};

}  // namespace rasim
