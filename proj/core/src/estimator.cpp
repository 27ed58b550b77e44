#include "rasim/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace rasim {

ReceiverView ReceiverView::initial(std::size_t nodes) {
  return ReceiverView{std::vector<double>(nodes, 0.0), std::vector<std::int64_t>(nodes, -1), 0};
}

void apply_slot(ReceiverView& view, const SlotOutcome& outcome,
                std::optional<double> delivered_value) {
  const bool delivered = outcome.kind == SlotKind::kDelivered;
  if (delivered != delivered_value.has_value()) {
    throw std::invalid_argument(delivered ? "delivery without a delivered value"
                                          : "delivered value without a delivery");
  }
  if (delivered) {
    const std::size_t i = *outcome.node;
    if (i >= view.size()) throw std::invalid_argument("delivered node out of range");
    view.estimates[i] = *delivered_value;
    view.last_delivery_slot[i] = view.slot;
  }
  ++view.slot;
}

void compute_errors(const SourceState& sources, const ReceiverView& view, std::span<double> out) {
  if (sources.slot != view.slot) throw std::invalid_argument("source and receiver slots differ");
  const std::size_t n = view.size();
  if (sources.values.size() != n || out.size() != n) {
    throw std::invalid_argument("node count mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = std::abs(sources.values[i] - view.estimates[i]);
}

ErrorVector error_vector(const SourceState& sources, const ReceiverView& view) {
  ErrorVector e{std::vector<double>(view.size()), view.slot};
  compute_errors(sources, view, e.psi);
  return e;
}

}  // namespace rasim
