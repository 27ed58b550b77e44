#pragma once

#include <cstdint>
#include <random>

#include <boost/random/normal_distribution.hpp>

namespace rasim {

/// Identifies the consumer of a derived stream so that two consumers never
/// share a sub-seed even when their indices coincide.
enum class StreamKind : std::uint64_t {
  kSource = 0x736f75726365ULL,
  kDecision = 0x6465636973ULL,
  kChannel = 0x6368616e6eULL,
  kReplication = 0x7265706cULL,
  kOracle = 0x6f7261636cULL,
};

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Sub-seed for stream `index` of the given kind under `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, StreamKind kind,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(master ^ static_cast<std::uint64_t>(kind)) + mix64(index));
}

/// Replication seeds are `seed ^ f(replication)`; earlier replications never
/// depend on how many are requested.
constexpr std::uint64_t replication_seed(std::uint64_t seed,
                                         std::uint64_t replication) noexcept {
  return seed ^ mix64(replication);
}

/// A reproducible per-consumer random stream.
///
/// The same (seed, node_id) pair always yields the same sequence of draws.
/// Normals come from the Boost ziggurat (exact tails); uniforms carry 53 bits
/// and lie in [0, 1).
class NoiseStream {
 public:
  NoiseStream() : NoiseStream(0, StreamKind::kSource, 0) {}
  NoiseStream(std::uint64_t seed, StreamKind kind, std::uint64_t node_id)
      : seed_(seed), node_id_(node_id), engine_(derive_seed(seed, kind, node_id)) {}

  double normal() {
    ++cursor_;
    return normal_(engine_);
  }

  double uniform() {
    ++cursor_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t node_id() const noexcept { return node_id_; }
  /// Number of draws consumed so far.
  std::uint64_t cursor() const noexcept { return cursor_; }

 private:
  std::uint64_t seed_;
  std::uint64_t node_id_;
  std::uint64_t cursor_ = 0;
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_;
};

}  // namespace rasim
