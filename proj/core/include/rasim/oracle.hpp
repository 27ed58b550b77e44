#pragma once

#include <cstdint>

namespace rasim {

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// First-passage moment estimates. For Brownian paths `integral` is the mean
/// of the integral of B_t^2 up to the exit time; for the discrete walk it is
/// the mean of sum_{j <= J} S_j^2.
struct HittingMoments {
  MomentEstimate j;
  MomentEstimate j2;
  MomentEstimate integral;
  MomentEstimate sj2;
  std::uint64_t n_paths = 0;
  std::uint64_t capped = 0;
  double capped_fraction = 0.0;
  /// Step size used (Brownian only).
  double dt = 0.0;
  /// dt exceeds 1e-3 a^2, so the estimates carry a discretization floor.
  bool resolution_limited = false;
};

/// Paths whose capped fraction exceeds this fail a run.
inline constexpr double kMaxCappedFraction = 1e-4;

struct BrownianOptions {
  double a = 1.0;
  /// 0 selects 1e-4 a^2.
  double dt = 0.0;
  std::uint64_t paths = 100'000;
  std::uint64_t seed = 1;
  /// Per-path step cap; 0 selects min(1e3 a^2/dt, 1e7).
  std::int64_t max_steps = 0;
  /// Detect exits between grid points with the Brownian-bridge crossing
  /// probability.
  bool bridge_correction = true;
  unsigned threads = 1;
};

struct WalkOptions {
  double beta = 1.0;
  double sigma = 1.0;
  std::uint64_t paths = 100'000;
  std::uint64_t seed = 1;
  /// Per-path step cap; 0 selects min(1e3 max(beta^2/sigma^2, 1), 1e7).
  std::int64_t max_steps = 0;
  unsigned threads = 1;
};

/// Exit of standard Brownian motion from (-a, a) by Euler steps of size dt.
/// Throws std::invalid_argument for non-positive a, dt or path count.
HittingMoments brownian_hitting_moments(const BrownianOptions& options);
HittingMoments brownian_hitting_moments(double a, double dt, std::uint64_t n_paths);

/// First |S_n| >= beta for S_n a sum of Normal(0, sigma^2) steps.
/// Throws std::invalid_argument for non-positive beta, sigma or path count.
HittingMoments random_walk_hitting_moments(const WalkOptions& options);
HittingMoments random_walk_hitting_moments(double beta, double sigma, std::uint64_t n_paths);

}  // namespace rasim
