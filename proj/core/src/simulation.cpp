#include "rasim/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rasim/channel.hpp"
#include "rasim/estimator.hpp"
#include "rasim/process.hpp"

namespace rasim {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, std::uint64_t v) noexcept {
  for (int b = 0; b < 8; ++b) {
    h ^= (v >> (8 * b)) & 0xffU;
    h *= kFnvPrime;
  }
}

void validate(const RunParams& p) {
  if (p.nodes < 1) throw std::invalid_argument("M must be at least 1");
  if (p.horizon < 1) throw std::invalid_argument("K must be at least 1");
  if (!(p.sigma >= 0.0) || !std::isfinite(p.sigma)) {
    throw std::invalid_argument("sigma must be finite and non-negative");
  }
  if (!(p.epsilon >= 0.0 && p.epsilon < 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1)");
  }
  if (p.burn_in < 0 || p.burn_in >= p.horizon) {
    throw std::invalid_argument("burn_in must lie in [0, K)");
  }
  if (p.psi_check_stride < 0) throw std::invalid_argument("psi_check_stride must be >= 0");
  if (p.psi_check_stride > 0 && p.psi_check_window < 1) {
    throw std::invalid_argument("psi_check_window must be >= 1");
  }
  const auto& pol = p.policy;
  if (pol.kind == PolicyKind::kEbt && !(pol.beta >= 0.0)) {
    throw std::invalid_argument("beta must be non-negative");
  }
  if (pol.kind == PolicyKind::kSat && pol.gamma < 1) {
    throw std::invalid_argument("gamma must be at least 1");
  }
  if (pol.kind == PolicyKind::kStationaryRandomized && !(pol.p > 0.0 && pol.p <= 1.0)) {
    throw std::invalid_argument("p must lie in (0, 1]");
  }
}

}  // namespace

SimulationResult simulate(const RunParams& params) {
  validate(params);
  const std::size_t m = params.nodes;
  const std::int64_t horizon = params.horizon;
  const ResolvedPolicy& policy = params.policy;
  const bool centralized = is_centralized(policy.kind);

  SourceBank sources(m, params.sigma, params.seed,
                     params.psi_check_stride > 0 ? params.psi_check_window : 0);
  Channel channel(ChannelConfig{params.epsilon}, derive_seed(params.seed, StreamKind::kChannel, 0));
  std::vector<NoiseStream> coins;
  coins.reserve(m);
  for (std::size_t i = 0; i < m; ++i) coins.emplace_back(params.seed, StreamKind::kDecision, i);

  ReceiverView view = ReceiverView::initial(m);
  NodeActivation activation(m);
  AlohaState aloha = AlohaState::initial(params.epsilon);
  MetricsAccumulator metrics(m, horizon, params.sigma, params.burn_in, params.keep_records);
  std::vector<NodeMirror> mirrors(params.verify ? m : 0);

  std::vector<double> psi(m, 0.0);
  std::vector<std::size_t> transmitters;
  transmitters.reserve(m);
  std::vector<std::size_t> newly_active;
  newly_active.reserve(m);
  std::vector<std::uint8_t> was_active(params.verify ? m : 0, 0);

  SimulationResult result;
  std::uint64_t hash = kFnvOffset;
  bool prev_collision = false;
  const double p_transmit_sr = policy.p;

  for (std::int64_t k = 0; k <= horizon; ++k) {
    if (k >= 1) {
      if (uses_aloha(policy.kind)) aloha = update_aloha(aloha, prev_collision);
      sources.step();
    }
    compute_errors(sources.state(), view, psi);
    metrics.add_errors(k, psi);

    transmitters.clear();
    newly_active.clear();
    if (centralized) {
      const std::size_t n = decide_centralized(policy.kind, view, psi);
      if (!activation.active(n)) newly_active.push_back(n);
      transmitters.push_back(n);
    } else {
      for (std::size_t i = 0; i < m; ++i) {
        if (!activation.active(i) && activation_gate(policy, psi[i], view.age(i))) {
          newly_active.push_back(i);
        }
      }
    }
    for (const std::size_t i : newly_active) {
      activation.activate(i, k);
      metrics.activate(i, k, psi[i]);
      fnv_mix(hash, static_cast<std::uint64_t>(k));
      fnv_mix(hash, (static_cast<std::uint64_t>(i) << 1) | 1U);
    }
    if (!centralized) {
      const double prob = policy.kind == PolicyKind::kStationaryRandomized ? p_transmit_sr
                                                                            : aloha.p_b;
      for (const std::size_t i : activation.active_nodes()) {
        if (coins[i].uniform() < prob) transmitters.push_back(i);
      }
      // The active list is unordered; the trace and channel see index order.
      std::sort(transmitters.begin(), transmitters.end());
    }
    for (const std::size_t i : transmitters) {
      fnv_mix(hash, static_cast<std::uint64_t>(k));
      fnv_mix(hash, static_cast<std::uint64_t>(i) << 1);
      if (params.keep_transmissions) result.transmissions.emplace_back(k, i);
    }

    const SlotOutcome outcome = channel.resolve(transmitters);
    check_outcome(outcome, transmitters.size());
    if (outcome.kind == SlotKind::kCollision) ++result.collisions;
    if (outcome.kind == SlotKind::kErased) ++result.erasures;
    if (centralized && outcome.collision_feedback()) {
      throw std::logic_error("collision under a centralized policy");
    }

    const std::size_t active_count = activation.count();
    metrics.end_slot(k, outcome, active_count);

    std::optional<double> delivered;
    if (outcome.kind == SlotKind::kDelivered) {
      delivered = sources.state().values[*outcome.node];
      activation.deactivate(*outcome.node);
    }

    if (params.verify) {
      for (std::size_t i = 0; i < m; ++i) {
        if (was_active[i] && !activation.active(i) && !outcome.delivered(i)) {
          throw std::logic_error("node " + std::to_string(i) +
                                 " left the active state without a delivery");
        }
      }
      const double* values = sources.state().values.data();
      for (std::size_t i = 0; i < m; ++i) {
        const bool sent = std::binary_search(transmitters.begin(), transmitters.end(), i);
        mirrors[i].observe(k, outcome.collision_feedback(), sent && outcome.delivered(i),
                           values[i]);
      }
    }

    if (params.psi_check_stride > 0 && k % params.psi_check_stride == 0) {
      const std::size_t i = static_cast<std::size_t>(k / params.psi_check_stride) % m;
      if (view.sample_slot(i) < sources.log().first_slot()) {
        ++result.psi_checks_skipped;
      } else {
        const double window = sources.increment_window_sum(i, view.sample_slot(i), k);
        const double err = std::abs(psi[i] - std::abs(window));
        const double scale = std::max(psi[i], params.sigma);
        if (scale > 0.0) result.max_psi_error = std::max(result.max_psi_error, err / scale);
        ++result.psi_checks;
      }
    }

    apply_slot(view, outcome, delivered);
    prev_collision = outcome.collision_feedback();

    if (params.verify) {
      for (std::size_t i = 0; i < m; ++i) {
        if (mirrors[i].estimate != view.estimates[i] ||
            mirrors[i].last_delivery_slot != view.last_delivery_slot[i]) {
          throw std::logic_error("node mirror diverged from the receiver view at node " +
                                 std::to_string(i));
        }
        was_active[i] = activation.active(i) ? 1 : 0;
      }
    }
  }

  result.report = metrics.report();
  result.stats = metrics.stats();
  result.records = metrics.records();
  result.trace_hash = hash;
  return result;
}

}  // namespace rasim
