#include "rasim/policies.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace rasim {

namespace {

constexpr std::array<std::pair<PolicyKind, std::string_view>, 6> kPolicyNames{{
    {PolicyKind::kStationaryRandomized, "stationary_randomized"},
    {PolicyKind::kPseudoBayesAloha, "pseudo_bayes_aloha"},
    {PolicyKind::kSat, "sat"},
    {PolicyKind::kEbt, "ebt"},
    {PolicyKind::kCentralMw, "mw"},
    {PolicyKind::kCentralGreedy, "greedy"},
}};

}  // namespace

std::string_view to_string(PolicyKind kind) {
  for (const auto& [k, name] : kPolicyNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) {
  for (const auto& [k, n] : kPolicyNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

double ResolvedPolicy::parameter() const noexcept {
  switch (kind) {
    case PolicyKind::kEbt: return beta;
    case PolicyKind::kSat: return static_cast<double>(gamma);
    case PolicyKind::kStationaryRandomized: return p;
    default: return 0.0;
  }
}

AlohaState AlohaState::initial(double epsilon) {
  return AlohaState{0.0, (1.0 - epsilon) / std::numbers::e, 1.0};
}

NodeActivation::NodeActivation(std::size_t nodes)
    : position_(nodes, kInactive), activation_slot_(nodes, -1) {
  list_.reserve(nodes);
}

void NodeActivation::activate(std::size_t i, std::int64_t slot) {
  if (active(i)) return;
  position_[i] = list_.size();
  list_.push_back(i);
  activation_slot_[i] = slot;
}

void NodeActivation::deactivate(std::size_t i) {
  const std::size_t pos = position_[i];
  if (pos == kInactive) return;
  const std::size_t last = list_.back();
  list_[pos] = last;
  position_[last] = pos;
  list_.pop_back();
  position_[i] = kInactive;
  activation_slot_[i] = -1;
}

Decision decide_decentralized(const ResolvedPolicy& policy, const LocalView& view,
                              const AlohaState& aloha, NoiseStream& coins) {
  if (is_centralized(policy.kind)) {
    throw std::invalid_argument("centralized policy '" + std::string(to_string(policy.kind)) +
                                "' has no decentralized decision");
  }
  Decision d;
  d.active = view.active || activation_gate(policy, view.psi, view.age);
  if (d.active) d.transmit = coins.uniform() < transmit_probability(policy, aloha);
  return d;
}

std::size_t decide_centralized(PolicyKind kind, const ReceiverView& view,
                               std::span<const double> psi) {
  const std::size_t n = view.size();
  if (n == 0) throw std::invalid_argument("no nodes to schedule");
  std::size_t best = 0;
  switch (kind) {
    case PolicyKind::kCentralMw: {
      // Largest age is the oldest delivery anchor.
      std::int64_t oldest = view.last_delivery_slot[0];
      for (std::size_t i = 1; i < n; ++i) {
        if (view.last_delivery_slot[i] < oldest) {
          oldest = view.last_delivery_slot[i];
          best = i;
        }
      }
      return best;
    }
    case PolicyKind::kCentralGreedy: {
      if (psi.size() != n) throw std::invalid_argument("error vector size mismatch");
      double largest = psi[0];
      for (std::size_t i = 1; i < n; ++i) {
        if (psi[i] > largest) {
          largest = psi[i];
          best = i;
        }
      }
      return best;
    }
    default:
      throw std::invalid_argument("decentralized policy '" + std::string(to_string(kind)) +
                                  "' has no central schedule");
  }
}

double default_threshold(PolicyKind kind, std::int64_t nodes, double sigma, double epsilon) {
  if (kind != PolicyKind::kEbt && kind != PolicyKind::kSat) {
    throw std::invalid_argument("policy '" + std::string(to_string(kind)) + "' has no threshold");
  }
  if (nodes < 1) throw std::invalid_argument("M must be at least 1");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("erasure probability must lie in [0, 1)");
  }
  if (kind == PolicyKind::kSat) {
    return std::ceil(std::numbers::e * static_cast<double>(nodes) / (1.0 - epsilon));
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  return sigma * std::sqrt(std::numbers::e * static_cast<double>(nodes) / (1.0 - epsilon));
}

}  // namespace rasim
