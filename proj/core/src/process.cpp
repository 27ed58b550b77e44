#include "rasim/process.hpp"

#include <stdexcept>
#include <string>

namespace rasim {

SourceState SourceState::initial(std::size_t nodes, double sigma) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("sigma must be non-negative");
  return SourceState{std::vector<double>(nodes, 0.0), sigma, 0};
}

InnovationLog::InnovationLog(std::size_t nodes, std::int64_t capacity)
    : nodes_(nodes), capacity_(capacity) {
  if (capacity < kUnbounded) throw std::invalid_argument("invalid innovation log capacity");
  if (capacity > 0) draws_.resize(static_cast<std::size_t>(capacity) * nodes);
}

std::int64_t InnovationLog::size() const noexcept {
  if (capacity_ == kUnbounded) return end_;
  return end_ < capacity_ ? end_ : capacity_;
}

void InnovationLog::push(std::span<const double> draws) {
  if (capacity_ == 0) return;
  if (draws.size() != nodes_) throw std::invalid_argument("draw count does not match node count");
  if (capacity_ == kUnbounded) {
    draws_.insert(draws_.end(), draws.begin(), draws.end());
  } else {
    const auto row = static_cast<std::size_t>(end_ % capacity_) * nodes_;
    std::copy(draws.begin(), draws.end(), draws_.begin() + static_cast<std::ptrdiff_t>(row));
  }
  ++end_;
}

double InnovationLog::at(std::size_t node, std::int64_t slot) const {
  if (node >= nodes_ || slot < first_slot() || slot >= end_) {
    throw std::out_of_range("innovation for node " + std::to_string(node) + " at slot " +
                            std::to_string(slot) + " is not retained");
  }
  const std::int64_t row = capacity_ == kUnbounded ? slot : slot % capacity_;
  return draws_[static_cast<std::size_t>(row) * nodes_ + node];
}

std::vector<NoiseStream> make_source_streams(std::uint64_t seed, std::size_t nodes) {
  std::vector<NoiseStream> streams;
  streams.reserve(nodes);
  for (std::size_t i = 0; i < nodes; ++i) streams.emplace_back(seed, StreamKind::kSource, i);
  return streams;
}

void step_sources(SourceState& state, std::span<NoiseStream> streams, InnovationLog* log) {
  const std::size_t n = state.values.size();
  if (streams.size() != n) throw std::invalid_argument("one noise stream per source is required");
  const double sigma = state.sigma;
  if (sigma == 0.0 && (log == nullptr || !log->enabled())) {
    ++state.slot;
    return;
  }
  if (log != nullptr && log->enabled()) {
    thread_local std::vector<double> draws;
    draws.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      draws[i] = streams[i].normal();
      state.values[i] += sigma * draws[i];
    }
    log->push(draws);
  } else {
    for (std::size_t i = 0; i < n; ++i) state.values[i] += sigma * streams[i].normal();
  }
  ++state.slot;
}

SourceBank::SourceBank(std::size_t nodes, double sigma, std::uint64_t seed,
                       std::int64_t log_capacity)
    : state_(SourceState::initial(nodes, sigma)),
      streams_(make_source_streams(seed, nodes)),
      log_(nodes, log_capacity) {}

double SourceBank::increment_window_sum(std::size_t node, std::int64_t from_slot,
                                        std::int64_t to_slot) const {
  if (node >= size()) throw std::out_of_range("node index out of range");
  if (from_slot < 0 || to_slot > state_.slot || from_slot > to_slot) {
    throw std::out_of_range("window [" + std::to_string(from_slot) + ", " +
                            std::to_string(to_slot) + ") outside [0, " +
                            std::to_string(state_.slot) + "]");
  }
  if (from_slot == to_slot) return 0.0;
  double sum = 0.0;
  for (std::int64_t j = from_slot; j < to_slot; ++j) sum += state_.sigma * log_.at(node, j);
  return sum;
}

}  // namespace rasim
