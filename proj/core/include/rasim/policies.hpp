#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rasim/estimator.hpp"
#include "rasim/random.hpp"

namespace rasim {

enum class PolicyKind : std::uint8_t {
  kStationaryRandomized,
  kPseudoBayesAloha,
  kSat,
  kEbt,
  kCentralMw,
  kCentralGreedy,
};

std::string_view to_string(PolicyKind kind);
std::optional<PolicyKind> parse_policy_kind(std::string_view name);

constexpr bool is_centralized(PolicyKind kind) noexcept {
  return kind == PolicyKind::kCentralMw || kind == PolicyKind::kCentralGreedy;
}
/// Policies whose active nodes contend with the pseudo-Bayesian ALOHA rule.
constexpr bool uses_aloha(PolicyKind kind) noexcept {
  return kind == PolicyKind::kPseudoBayesAloha || kind == PolicyKind::kSat ||
         kind == PolicyKind::kEbt;
}

/// User-facing policy selection. Unset parameters take their defaults when the
/// run is resolved: beta and gamma from default_threshold, p = 1/M.
struct PolicyConfig {
  PolicyKind kind = PolicyKind::kEbt;
  std::optional<double> beta;
  std::optional<std::int64_t> gamma;
  std::optional<double> p;
  /// Pick p from a pilot grid {c/M : c in [0.5, 2]} instead of 1/M.
  bool calibrate_p = false;
  /// Pick gamma by a pilot search instead of the default rule.
  bool calibrate_gamma = false;

  friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

/// Policy with every parameter fixed.
struct ResolvedPolicy {
  PolicyKind kind = PolicyKind::kEbt;
  double beta = 0.0;
  std::int64_t gamma = 1;
  double p = 1.0;

  /// The single tuning parameter reported in CSV output (beta, gamma or p).
  double parameter() const noexcept;
};

/// Rivest's pseudo-Bayesian backlog estimate shared by all contending nodes.
struct AlohaState {
  double n_hat = 0.0;
  double lambda_hat = 1.0 / std::numbers::e;
  double p_b = 1.0;

  /// N(0) = 0, p_b(0) = 1, lambda_hat = (1 - epsilon) / e.
  static AlohaState initial(double epsilon = 0.0);
};

/// One backlog update from the previous slot's collision bit.
constexpr AlohaState update_aloha(AlohaState s, bool collision_prev) noexcept {
  constexpr double kCollisionStep = 1.0 / (std::numbers::e - 2.0);
  if (collision_prev) {
    s.n_hat = s.n_hat + s.lambda_hat + kCollisionStep;
  } else {
    s.n_hat = s.lambda_hat + (s.n_hat > 1.0 ? s.n_hat - 1.0 : 0.0);
  }
  s.p_b = s.n_hat > 1.0 ? 1.0 / s.n_hat : 1.0;
  return s;
}

/// Active flags with an O(1) active list. A node stays active until its own
/// delivery.
class NodeActivation {
 public:
  explicit NodeActivation(std::size_t nodes);

  bool active(std::size_t i) const noexcept { return position_[i] != kInactive; }
  std::int64_t activation_slot(std::size_t i) const noexcept { return activation_slot_[i]; }
  std::span<const std::size_t> active_nodes() const noexcept { return list_; }
  std::size_t count() const noexcept { return list_.size(); }
  std::size_t size() const noexcept { return position_.size(); }

  void activate(std::size_t i, std::int64_t slot);
  void deactivate(std::size_t i);

 private:
  static constexpr std::size_t kInactive = static_cast<std::size_t>(-1);
  std::vector<std::size_t> position_;
  std::vector<std::int64_t> activation_slot_;
  std::vector<std::size_t> list_;
};

/// What a node knows about itself at the start of a slot.
struct LocalView {
  double psi = 0.0;
  std::int64_t age = 1;
  bool active = false;
};

struct Decision {
  bool active = false;
  bool transmit = false;
};

/// Whether an inactive node becomes active this slot.
inline bool activation_gate(const ResolvedPolicy& policy, double psi, std::int64_t age) noexcept {
  switch (policy.kind) {
    case PolicyKind::kEbt: return psi >= policy.beta;
    case PolicyKind::kSat: return age >= policy.gamma;
    case PolicyKind::kStationaryRandomized:
    case PolicyKind::kPseudoBayesAloha: return true;
    case PolicyKind::kCentralMw:
    case PolicyKind::kCentralGreedy: return false;
  }
  return false;
}

inline double transmit_probability(const ResolvedPolicy& policy, const AlohaState& aloha) noexcept {
  return policy.kind == PolicyKind::kStationaryRandomized ? policy.p : aloha.p_b;
}

/// Decentralized decision of one node; active nodes flip one coin from
/// `coins`. Throws std::invalid_argument for centralized kinds.
Decision decide_decentralized(const ResolvedPolicy& policy, const LocalView& view,
                              const AlohaState& aloha, NoiseStream& coins);

/// Node scheduled by a centralized policy: largest age (MW) or largest error
/// (greedy), ties to the lowest index.
std::size_t decide_centralized(PolicyKind kind, const ReceiverView& view,
                               std::span<const double> psi);

/// Default thresholds: sigma * sqrt(e M / (1 - epsilon)) for EbT and
/// ceil(e M / (1 - epsilon)) slots for SAT (sigma is ignored). Throws
/// std::invalid_argument for other kinds or out-of-range arguments.
double default_threshold(PolicyKind kind, std::int64_t nodes, double sigma, double epsilon);

}  // namespace rasim
