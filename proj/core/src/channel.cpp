#include "rasim/channel.hpp"

#include <stdexcept>

namespace rasim {

std::string_view to_string(SlotKind kind) {
  switch (kind) {
    case SlotKind::kIdle: return "idle";
    case SlotKind::kCollision: return "collision";
    case SlotKind::kDelivered: return "delivered";
    case SlotKind::kErased: return "erased";
  }
  return "unknown";
}

SlotOutcome resolve_slot(std::span<const std::size_t> transmitters, const ChannelConfig& cfg,
                         NoiseStream& erasure_stream) {
  if (transmitters.empty()) return {};
  if (transmitters.size() >= 2) return {SlotKind::kCollision, std::nullopt};
  // Erasure is applied after collision resolution.
  if (cfg.epsilon > 0.0 && erasure_stream.uniform() < cfg.epsilon) {
    return {SlotKind::kErased, transmitters.front()};
  }
  return {SlotKind::kDelivered, transmitters.front()};
}

void check_outcome(const SlotOutcome& outcome, std::size_t transmitter_count) {
  const bool ok = [&] {
    switch (outcome.kind) {
      case SlotKind::kIdle: return transmitter_count == 0 && !outcome.node;
      case SlotKind::kCollision: return transmitter_count >= 2 && !outcome.node;
      case SlotKind::kDelivered:
      case SlotKind::kErased: return transmitter_count == 1 && outcome.node.has_value();
    }
    return false;
  }();
  if (!ok) throw std::logic_error("slot outcome violates the feedback invariants");
}

Channel::Channel(ChannelConfig cfg, std::uint64_t seed)
    : cfg_(cfg), stream_(seed, StreamKind::kChannel, 0) {
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon < 1.0)) {
    throw std::invalid_argument("erasure probability must lie in [0, 1)");
  }
}

}  // namespace rasim
