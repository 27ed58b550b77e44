#include "rasim/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <tuple>

#include "json.hpp"
#include "rasim/parallel.hpp"
#include "rasim/random.hpp"

#ifndef RASIM_GIT_REVISION
#define RASIM_GIT_REVISION "unknown"
#endif

namespace rasim {

using nlohmann::json;

namespace {

std::uint64_t pilot_seed(std::uint64_t seed) {
  return derive_seed(seed, StreamKind::kReplication, 0x70696c6f74ULL);
}

/// Pilot NAAoI of an oblivious policy. Ages never read the process, so the
/// pilot runs with sigma = 0 and skips the source draws.
double pilot_naaoi(std::int64_t nodes, double epsilon, std::uint64_t seed, std::int64_t horizon,
                   const ResolvedPolicy& policy) {
  RunParams p;
  p.nodes = static_cast<std::size_t>(nodes);
  p.horizon = horizon;
  p.sigma = 0.0;
  p.epsilon = epsilon;
  p.policy = policy;
  p.seed = pilot_seed(seed);
  return simulate(p).report.naaoi;
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

using CalibrationKey = std::tuple<std::int64_t, double, std::uint64_t, std::int64_t>;

std::map<CalibrationKey, SatCalibration>& sat_cache() {
  static std::map<CalibrationKey, SatCalibration> cache;
  return cache;
}

std::vector<std::int64_t> grid(std::int64_t lo, std::int64_t hi, std::int64_t step) {
  std::vector<std::int64_t> g;
  for (std::int64_t v = lo; v < hi; v += step) g.push_back(v);
  g.push_back(hi);
  return g;
}

MetricsReport with_shape(MetricsReport r, const MetricsReport& like) {
  r.nodes = like.nodes;
  r.slots = like.slots;
  r.sigma2 = like.sigma2;
  return r;
}

json resolved_json(const ResolvedPolicy& p) {
  json j{{"kind", std::string(to_string(p.kind))}};
  switch (p.kind) {
    case PolicyKind::kEbt: j["beta"] = p.beta; break;
    case PolicyKind::kSat: j["gamma"] = p.gamma; break;
    case PolicyKind::kStationaryRandomized: j["p"] = p.p; break;
    default: break;
  }
  return j;
}

std::vector<CsvRow> result_rows(const RunResult& r) {
  std::vector<CsvRow> rows;
  CsvRow base;
  base.policy = std::string(to_string(r.policy.kind));
  base.M = r.config.M;
  base.K = r.config.K;
  base.sigma2 = r.config.sigma2;
  base.epsilon = r.config.epsilon;
  base.beta_or_gamma = r.policy.parameter();
  base.seed = r.config.seed;
  for (std::size_t i = 0; i < r.replications.size(); ++i) {
    CsvRow row = base;
    row.replication = std::to_string(i);
    row.report = r.replications[i];
    rows.push_back(std::move(row));
  }
  CsvRow mean = base;
  mean.replication = "mean";
  mean.report = r.summary.mean;
  rows.push_back(std::move(mean));
  CsvRow se = base;
  se.replication = "stderr";
  se.report = r.summary.std_error;
  rows.push_back(std::move(se));
  return rows;
}

}  // namespace

SatCalibration calibrate_sat_gamma(std::int64_t nodes, double epsilon, std::uint64_t seed,
                                   std::int64_t pilot_horizon, unsigned threads) {
  if (nodes < 1) throw ConfigError("M", "must be >= 1");
  if (!(epsilon >= 0.0 && epsilon < 1.0)) throw ConfigError("epsilon", "must lie in [0, 1)");
  if (pilot_horizon < 1) throw ConfigError("pilot_horizon", "must be >= 1");
  const CalibrationKey key{nodes, epsilon, seed, pilot_horizon};
  {
    std::lock_guard lock(cache_mutex());
    if (auto it = sat_cache().find(key); it != sat_cache().end()) return it->second;
  }

  const double scale = 1.0 / (1.0 - epsilon);
  const auto lo = static_cast<std::int64_t>(std::ceil(static_cast<double>(nodes) * scale));
  const auto hi = std::max(lo, static_cast<std::int64_t>(
                                   std::floor(3.0 * static_cast<double>(nodes) * scale)));
  std::map<std::int64_t, double> seen;
  auto evaluate = [&](const std::vector<std::int64_t>& candidates) {
    std::vector<std::int64_t> todo;
    for (auto g : candidates) {
      if (!seen.contains(g)) todo.push_back(g);
    }
    std::vector<double> values(todo.size());
    parallel_for(todo.size(), threads, [&](std::size_t t) {
      ResolvedPolicy p{PolicyKind::kSat, 0.0, todo[t], 1.0};
      values[t] = pilot_naaoi(nodes, epsilon, seed, pilot_horizon, p);
    });
    for (std::size_t t = 0; t < todo.size(); ++t) seen[todo[t]] = values[t];
  };
  auto best = [&] {
    return std::min_element(seen.begin(), seen.end(), [](const auto& a, const auto& b) {
             return a.second < b.second;
           })->first;
  };

  std::int64_t step = std::max<std::int64_t>(1, (hi - lo) / 10);
  evaluate(grid(lo, hi, step));
  while (step > 1) {
    const std::int64_t center = best();
    const std::int64_t next = std::max<std::int64_t>(1, step / 4);
    evaluate(grid(std::max(lo, center - step), std::min(hi, center + step), next));
    step = next;
  }

  SatCalibration c;
  c.gamma = best();
  c.naaoi = seen.at(c.gamma);
  c.evaluated.assign(seen.begin(), seen.end());
  c.pilot_horizon = pilot_horizon;
  std::lock_guard lock(cache_mutex());
  sat_cache().emplace(key, c);
  return c;
}

ProbabilityCalibration calibrate_sr_p(std::int64_t nodes, double epsilon, std::uint64_t seed,
                                      std::int64_t pilot_horizon, unsigned threads) {
  if (nodes < 1) throw ConfigError("M", "must be >= 1");
  std::vector<double> candidates;
  for (int c = 0; c <= 12; ++c) {
    candidates.push_back(std::min(1.0, (0.5 + 0.125 * c) / static_cast<double>(nodes)));
  }
  std::vector<double> values(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t t) {
    ResolvedPolicy p{PolicyKind::kStationaryRandomized, 0.0, 1, candidates[t]};
    values[t] = pilot_naaoi(nodes, epsilon, seed, pilot_horizon, p);
  });
  ProbabilityCalibration out;
  const auto it = std::min_element(values.begin(), values.end());
  out.p = candidates[static_cast<std::size_t>(it - values.begin())];
  out.naaoi = *it;
  for (std::size_t t = 0; t < candidates.size(); ++t) {
    out.evaluated.emplace_back(candidates[t], values[t]);
  }
  return out;
}

ResolvedPolicy resolve_policy(const PolicyConfig& policy, const SimConfig& cfg,
                              unsigned threads) {
  ResolvedPolicy r;
  r.kind = policy.kind;
  const double sigma = std::sqrt(cfg.sigma2);
  switch (policy.kind) {
    case PolicyKind::kEbt:
      r.beta = policy.beta ? *policy.beta
                           : default_threshold(PolicyKind::kEbt, cfg.M, sigma, cfg.epsilon);
      break;
    case PolicyKind::kSat:
      if (policy.gamma) {
        r.gamma = *policy.gamma;
      } else if (policy.calibrate_gamma) {
        r.gamma = calibrate_sat_gamma(cfg.M, cfg.epsilon, cfg.seed, kPilotHorizon, threads).gamma;
      } else {
        r.gamma = static_cast<std::int64_t>(
            default_threshold(PolicyKind::kSat, cfg.M, sigma, cfg.epsilon));
      }
      break;
    case PolicyKind::kStationaryRandomized:
      if (policy.p) {
        r.p = *policy.p;
      } else if (policy.calibrate_p) {
        r.p = calibrate_sr_p(cfg.M, cfg.epsilon, cfg.seed, kPilotHorizon, threads).p;
      } else {
        r.p = 1.0 / static_cast<double>(cfg.M);
      }
      break;
    default: break;
  }
  return r;
}

RunParams make_run_params(const SimConfig& cfg, const ResolvedPolicy& policy,
                          std::int64_t replication, bool verify) {
  RunParams p;
  p.nodes = static_cast<std::size_t>(cfg.M);
  p.horizon = cfg.K;
  p.sigma = std::sqrt(cfg.sigma2);
  p.epsilon = cfg.epsilon;
  p.policy = policy;
  p.seed = replication_seed(cfg.seed, static_cast<std::uint64_t>(replication));
  p.burn_in = cfg.burn_in;
  p.verify = verify;
  return p;
}

Aggregate aggregate(std::span<const MetricsReport> reports) {
  if (reports.empty()) throw std::invalid_argument("no reports to aggregate");
  const double n = static_cast<double>(reports.size());
  std::array<double, 15> mean{};
  for (const auto& r : reports) {
    const auto v = metric_values(r);
    for (std::size_t q = 0; q < v.size(); ++q) mean[q] += v[q];
  }
  for (double& m : mean) m /= n;
  std::array<double, 15> se{};
  if (reports.size() > 1) {
    for (const auto& r : reports) {
      const auto v = metric_values(r);
      for (std::size_t q = 0; q < v.size(); ++q) se[q] += (v[q] - mean[q]) * (v[q] - mean[q]);
    }
    for (double& s : se) s = std::sqrt(s / (n - 1.0) / n);
  }
  Aggregate a{with_shape(report_from_values(mean), reports.front()),
              with_shape(report_from_values(se), reports.front())};
  for (const auto& r : reports) {
    a.mean.intervals += r.intervals;
    a.mean.deliveries += r.deliveries;
  }
  return a;
}

std::vector<CsvRow> RunResult::rows() const { return result_rows(*this); }

RunResult run_single(const SimConfig& cfg, const HarnessOptions& options) {
  validate(cfg);
  RunResult r;
  r.config = cfg;
  r.policy = resolve_policy(cfg.policy, cfg, options.threads);
  r.replications.resize(static_cast<std::size_t>(cfg.replications));
  parallel_for(r.replications.size(), options.threads, [&](std::size_t i) {
    r.replications[i] =
        simulate(make_run_params(cfg, r.policy, static_cast<std::int64_t>(i), options.verify))
            .report;
  });
  r.summary = aggregate(r.replications);
  return r;
}

std::vector<CsvRow> SweepResult::rows() const {
  std::vector<CsvRow> rows;
  for (const auto& p : points) {
    auto pr = p.rows();
    rows.insert(rows.end(), pr.begin(), pr.end());
  }
  return rows;
}

SweepResult run_sweep(const SweepSpec& spec, const HarnessOptions& options) {
  validate(spec);
  SweepResult out;
  out.spec = spec;
  for (double value : spec.values) {
    const SimConfig at = apply_axis(spec.base, spec.axis, value);
    for (const auto& policy : spec.policies) {
      RunResult r;
      r.config = at;
      r.config.policy = policy;
      r.policy = resolve_policy(policy, at, options.threads);
      r.replications.resize(static_cast<std::size_t>(at.replications));
      out.points.push_back(std::move(r));
    }
  }
  const std::size_t reps = static_cast<std::size_t>(spec.base.replications);
  parallel_for(out.points.size() * reps, options.threads, [&](std::size_t job) {
    RunResult& r = out.points[job / reps];
    const std::size_t rep = job % reps;
    r.replications[rep] =
        simulate(make_run_params(r.config, r.policy, static_cast<std::int64_t>(rep),
                                 options.verify))
            .report;
  });
  for (auto& r : out.points) r.summary = aggregate(r.replications);
  return out;
}

std::vector<std::string_view> preset_names() {
  return {"naee-vs-sigma2", "naee-vs-epsilon", "gap-vs-M"};
}

SweepSpec sweep_preset(std::string_view name) {
  const std::vector<PolicyConfig> all{
      {PolicyKind::kSat, {}, {}, {}, false, false},
      {PolicyKind::kEbt, {}, {}, {}, false, false},
      {PolicyKind::kCentralMw, {}, {}, {}, false, false},
      {PolicyKind::kCentralGreedy, {}, {}, {}, false, false},
      {PolicyKind::kStationaryRandomized, {}, {}, {}, false, false},
      {PolicyKind::kPseudoBayesAloha, {}, {}, {}, false, false},
  };
  SweepSpec s;
  if (name == "naee-vs-sigma2") {
    s.axis = SweepAxis::kSigma2;
    s.values = {1, 2, 3, 4, 5};
    s.policies = all;
  } else if (name == "naee-vs-epsilon") {
    s.base.sigma2 = 3.0;
    s.axis = SweepAxis::kEpsilon;
    s.values = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
    s.policies = all;
  } else if (name == "gap-vs-M") {
    s.base.sigma2 = 3.0;
    s.axis = SweepAxis::kM;
    for (int m = 50; m <= 500; m += 50) s.values.push_back(m);
    s.policies = {{PolicyKind::kEbt, {}, {}, {}, false, false}};
  } else {
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
  }
  s.base.policy = s.policies.front();
  return s;
}

std::string_view git_revision() noexcept { return RASIM_GIT_REVISION; }

std::filesystem::path default_output_path(std::string_view file_name) {
  const char* dir = std::getenv("RASIM_OUTPUT_DIR");
  const std::filesystem::path base = dir != nullptr && *dir != '\0' ? dir : ".";
  return base / std::filesystem::path(file_name);
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::filesystem::path metadata_path(const std::filesystem::path& csv_path) {
  return std::filesystem::path(csv_path.string() + ".meta.json");
}

std::string run_metadata(const RunResult& result, double wall_seconds, unsigned threads) {
  json j{{"kind", "run"},
         {"config", json::parse(serialize(result.config))},
         {"resolved_policy", resolved_json(result.policy)},
         {"git_revision", std::string(git_revision())},
         {"wall_time_seconds", wall_seconds},
         {"threads", threads}};
  return j.dump(2) + '\n';
}

std::string sweep_metadata(const SweepResult& result, double wall_seconds, unsigned threads) {
  json resolved = json::array();
  for (const auto& p : result.points) {
    json r = resolved_json(p.policy);
    r["axis_value"] = p.config.M;
    switch (result.spec.axis) {
      case SweepAxis::kSigma2: r["axis_value"] = p.config.sigma2; break;
      case SweepAxis::kEpsilon: r["axis_value"] = p.config.epsilon; break;
      case SweepAxis::kM: break;
    }
    resolved.push_back(std::move(r));
  }
  json j{{"kind", "sweep"},
         {"spec", json::parse(serialize(result.spec))},
         {"resolved_policies", resolved},
         {"git_revision", std::string(git_revision())},
         {"wall_time_seconds", wall_seconds},
         {"threads", threads}};
  return j.dump(2) + '\n';
}

}  // namespace rasim
