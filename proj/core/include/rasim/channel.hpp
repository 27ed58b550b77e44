#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "rasim/random.hpp"

namespace rasim {

enum class SlotKind : std::uint8_t { kIdle, kCollision, kDelivered, kErased };

std::string_view to_string(SlotKind kind);

/// Resolution of one channel slot and the feedback it produces.
///
/// c(k) is broadcast to every node. d_i(k) is observed privately by node i as
/// an acknowledgement, which is how a sender tells an erasure from a delivery.
struct SlotOutcome {
  SlotKind kind = SlotKind::kIdle;
  /// Sender for kDelivered and kErased.
  std::optional<std::size_t> node;

  bool collision_feedback() const noexcept { return kind == SlotKind::kCollision; }
  bool delivered(std::size_t i) const noexcept {
    return kind == SlotKind::kDelivered && node == i;
  }
  /// Number of d_i(k) bits that are set (0 or 1).
  int delivery_count() const noexcept { return kind == SlotKind::kDelivered ? 1 : 0; }
};

struct ChannelConfig {
  /// Probability that a collision-free packet is still lost. 0 is the
  /// reliable collision channel.
  double epsilon = 0.0;
};

/// Resolves one slot. Erasure draws come from `erasure_stream`, which must be
/// independent of every source stream.
SlotOutcome resolve_slot(std::span<const std::size_t> transmitters, const ChannelConfig& cfg,
                         NoiseStream& erasure_stream);

/// Checks the feedback invariants of an outcome; throws std::logic_error.
void check_outcome(const SlotOutcome& outcome, std::size_t transmitter_count);

class Channel {
 public:
  Channel(ChannelConfig cfg, std::uint64_t seed);

  SlotOutcome resolve(std::span<const std::size_t> transmitters) {
    return resolve_slot(transmitters, cfg_, stream_);
  }
  const ChannelConfig& config() const noexcept { return cfg_; }

 private:
  ChannelConfig cfg_;
  NoiseStream stream_;
};

}  // namespace rasim
