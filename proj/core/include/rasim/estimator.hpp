#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rasim/channel.hpp"
#include "rasim/process.hpp"

namespace rasim {

/// Fusion-center state: the last delivered sample of every source and when it
/// was delivered.
///
/// Ages follow h_i(k) = k - k_{l-1}. Before any delivery the anchor is slot -1
/// with value X_i(0) = 0, which gives h_i(0) = 1.
struct ReceiverView {
  std::vector<double> estimates;
  std::vector<std::int64_t> last_delivery_slot;
  std::int64_t slot = 0;

  static ReceiverView initial(std::size_t nodes);

  std::size_t size() const noexcept { return estimates.size(); }
  std::int64_t age(std::size_t i) const noexcept { return slot - last_delivery_slot[i]; }
  /// Slot whose sample X_i is currently held as the estimate.
  std::int64_t sample_slot(std::size_t i) const noexcept {
    return last_delivery_slot[i] < 0 ? 0 : last_delivery_slot[i];
  }
};

struct ErrorVector {
  std::vector<double> psi;
  std::int64_t slot = 0;
};

/// Advances the view past slot `view.slot`. A delivery stores the carried
/// sample and resets the sender's age to 1 at the next slot; every other
/// outcome only ages the estimates. Throws std::invalid_argument if
/// `delivered_value` is present without a delivery or missing with one.
void apply_slot(ReceiverView& view, const SlotOutcome& outcome,
                std::optional<double> delivered_value);

/// psi_i = |X_i - Xhat_i|, written into `out`. Throws on slot mismatch.
void compute_errors(const SourceState& sources, const ReceiverView& view, std::span<double> out);

ErrorVector error_vector(const SourceState& sources, const ReceiverView& view);

/// Node i's private copy of its own estimate and age, maintained from the
/// broadcast collision bit and its own acknowledgement only.
struct NodeMirror {
  double estimate = 0.0;
  std::int64_t last_delivery_slot = -1;

  /// End-of-slot update. `sent_value` is the sample transmitted in `slot`.
  void observe(std::int64_t slot, bool collision, bool own_ack, double sent_value) noexcept {
    if (!collision && own_ack) {
      estimate = sent_value;
      last_delivery_slot = slot;
    }
  }
  std::int64_t age(std::int64_t slot) const noexcept { return slot - last_delivery_slot; }
};

}  // namespace rasim
