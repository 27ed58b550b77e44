#include "rasim/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "rasim/metrics.hpp"
#include "rasim/parallel.hpp"
#include "rasim/random.hpp"

namespace rasim {

namespace {

constexpr std::uint64_t kChunk = 1024;
constexpr std::int64_t kHardCap = 10'000'000;

/// Running sums of x and x^2 for the four per-path quantities.
struct ChunkSums {
  std::array<CompensatedSum, 4> sum;
  std::array<CompensatedSum, 4> sum_sq;
  std::uint64_t done = 0;
  std::uint64_t capped = 0;

  void add(const std::array<double, 4>& v) {
    for (std::size_t q = 0; q < 4; ++q) {
      sum[q].add(v[q]);
      sum_sq[q].add(v[q] * v[q]);
    }
    ++done;
  }
  void merge(const ChunkSums& o) {
    for (std::size_t q = 0; q < 4; ++q) {
      sum[q].merge(o.sum[q]);
      sum_sq[q].merge(o.sum_sq[q]);
    }
    done += o.done;
    capped += o.capped;
  }
};

MomentEstimate estimate(const CompensatedSum& s, const CompensatedSum& s2, std::uint64_t n) {
  if (n == 0) return {};
  const double nd = static_cast<double>(n);
  const double mean = s.value() / nd;
  const double var = n > 1 ? std::max(0.0, (s2.value() - nd * mean * mean) / (nd - 1.0)) : 0.0;
  return {mean, std::sqrt(var / nd)};
}

/// Runs `paths` independent paths in fixed chunks and reduces in chunk order.
template <typename PathFn>
HittingMoments run_paths(std::uint64_t paths, unsigned threads, PathFn&& path) {
  const std::uint64_t chunks = (paths + kChunk - 1) / kChunk;
  std::vector<ChunkSums> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(paths, begin + kChunk);
    for (std::uint64_t p = begin; p < end; ++p) {
      std::array<double, 4> v{};
      if (path(p, v)) {
        partial[c].add(v);
      } else {
        ++partial[c].capped;
      }
    }
  });
  ChunkSums total;
  for (const auto& c : partial) total.merge(c);
  HittingMoments h;
  h.j = estimate(total.sum[0], total.sum_sq[0], total.done);
  h.j2 = estimate(total.sum[1], total.sum_sq[1], total.done);
  h.integral = estimate(total.sum[2], total.sum_sq[2], total.done);
  h.sj2 = estimate(total.sum[3], total.sum_sq[3], total.done);
  h.n_paths = paths;
  h.capped = total.capped;
  h.capped_fraction = static_cast<double>(total.capped) / static_cast<double>(paths);
  return h;
}

std::mt19937_64 path_engine(std::uint64_t seed, std::uint64_t path) {
  return std::mt19937_64(derive_seed(seed, StreamKind::kOracle, path));
}

}  // namespace

HittingMoments brownian_hitting_moments(const BrownianOptions& o) {
  if (!(o.a > 0.0) || !std::isfinite(o.a)) throw std::invalid_argument("a must be positive");
  if (o.dt < 0.0 || !std::isfinite(o.dt)) throw std::invalid_argument("dt must be positive");
  if (o.paths == 0) throw std::invalid_argument("path count must be positive");
  if (o.max_steps < 0) throw std::invalid_argument("max_steps must be non-negative");
  const double a = o.a;
  const double dt = o.dt > 0.0 ? o.dt : 1e-4 * a * a;
  const double sqrt_dt = std::sqrt(dt);
  const double expected_steps = a * a / dt;
  const std::int64_t cap =
      o.max_steps > 0
          ? o.max_steps
          : static_cast<std::int64_t>(std::min(1e3 * std::max(expected_steps, 1.0),
                                               static_cast<double>(kHardCap)));
  // Beyond this distance from the barrier the bridge probability is below
  // exp(-2 * 6^2).
  const double near = 6.0 * sqrt_dt;

  auto path = [&](std::uint64_t p, std::array<double, 4>& v) {
    std::mt19937_64 engine = path_engine(o.seed, p);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> unif;
    double b = 0.0;
    double integral = 0.0;
    for (std::int64_t n = 1; n <= cap; ++n) {
      const double next = b + sqrt_dt * normal(engine);
      integral += 0.5 * (b * b + next * next) * dt;
      bool exited = std::abs(next) >= a;
      if (!exited && o.bridge_correction) {
        const double gap_now = a - std::abs(b);
        const double gap_next = a - std::abs(next);
        if (gap_now < near || gap_next < near) {
          const double up = std::exp(-2.0 * (a - b) * (a - next) / dt);
          const double down = std::exp(-2.0 * (a + b) * (a + next) / dt);
          exited = unif(engine) < up + down;
        }
      }
      b = next;
      if (exited) {
        const double t = static_cast<double>(n) * dt;
        v = {t, t * t, integral, b * b};
        return true;
      }
    }
    return false;
  };
  HittingMoments h = run_paths(o.paths, o.threads, path);
  h.dt = dt;
  h.resolution_limited = dt > 1e-3 * a * a;
  return h;
}

HittingMoments brownian_hitting_moments(double a, double dt, std::uint64_t n_paths) {
  BrownianOptions o;
  o.a = a;
  o.dt = dt;
  o.paths = n_paths;
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  return brownian_hitting_moments(o);
}

HittingMoments random_walk_hitting_moments(const WalkOptions& o) {
  if (!(o.beta > 0.0) || !std::isfinite(o.beta)) {
    throw std::invalid_argument("beta must be positive");
  }
  if (!(o.sigma > 0.0) || !std::isfinite(o.sigma)) {
    throw std::invalid_argument("sigma must be positive");
  }
  if (o.paths == 0) throw std::invalid_argument("path count must be positive");
  if (o.max_steps < 0) throw std::invalid_argument("max_steps must be non-negative");
  const double ratio = o.beta / o.sigma;
  const std::int64_t cap =
      o.max_steps > 0
          ? o.max_steps
          : static_cast<std::int64_t>(
                std::min(1e3 * std::max(ratio * ratio, 1.0), static_cast<double>(kHardCap)));

  auto path = [&](std::uint64_t p, std::array<double, 4>& v) {
    std::mt19937_64 engine = path_engine(o.seed, p);
    std::normal_distribution<double> normal;
    double s = 0.0;
    double sum_sq = 0.0;
    for (std::int64_t n = 1; n <= cap; ++n) {
      s += o.sigma * normal(engine);
      sum_sq += s * s;
      if (std::abs(s) >= o.beta) {
        const double j = static_cast<double>(n);
        v = {j, j * j, sum_sq, s * s};
        return true;
      }
    }
    return false;
  };
  return run_paths(o.paths, o.threads, path);
}

HittingMoments random_walk_hitting_moments(double beta, double sigma, std::uint64_t n_paths) {
  WalkOptions o;
  o.beta = beta;
  o.sigma = sigma;
  o.paths = n_paths;
  return random_walk_hitting_moments(o);
}

}  // namespace rasim
