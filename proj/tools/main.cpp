#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rasim/config.hpp"
#include "rasim/csv.hpp"
#include "rasim/harness.hpp"
#include "rasim/oracle.hpp"

namespace {

using rasim::ConfigError;

struct Overrides {
  std::optional<std::int64_t> M;
  std::optional<std::int64_t> K;
  std::optional<double> sigma2;
  std::optional<double> epsilon;
  std::optional<std::string> policy;
  std::optional<double> beta;
  std::optional<std::int64_t> gamma;
  std::optional<double> p;
  bool calibrate_p = false;
  bool calibrate_gamma = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> replications;
  std::optional<std::int64_t> burn_in;
};

void add_overrides(CLI::App* cmd, Overrides& o, bool with_policy) {
  cmd->add_option("--M", o.M, "Number of nodes");
  cmd->add_option("--K", o.K, "Horizon in slots");
  cmd->add_option("--sigma2", o.sigma2, "Innovation variance");
  cmd->add_option("--epsilon", o.epsilon, "Erasure probability");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--replications", o.replications, "Replications per point");
  cmd->add_option("--burn-in", o.burn_in, "Slots skipped by interval statistics");
  if (!with_policy) return;
  cmd->add_option("--policy", o.policy,
                  "stationary_randomized|pseudo_bayes_aloha|sat|ebt|mw|greedy");
  cmd->add_option("--beta", o.beta, "EbT threshold");
  cmd->add_option("--gamma", o.gamma, "SAT age threshold");
  cmd->add_option("--p", o.p, "Stationary randomized transmit probability");
  cmd->add_flag("--calibrate-p", o.calibrate_p, "Pick p by a pilot grid");
  cmd->add_flag("--calibrate-gamma", o.calibrate_gamma, "Pick gamma by a pilot search");
}

void apply(const Overrides& o, rasim::SimConfig& c) {
  if (o.M) c.M = *o.M;
  if (o.K) c.K = *o.K;
  if (o.sigma2) c.sigma2 = *o.sigma2;
  if (o.epsilon) c.epsilon = *o.epsilon;
  if (o.seed) c.seed = *o.seed;
  if (o.replications) c.replications = *o.replications;
  if (o.burn_in) c.burn_in = *o.burn_in;
  if (o.policy) {
    const auto kind = rasim::parse_policy_kind(*o.policy);
    if (!kind) throw ConfigError("policy", "unknown policy '" + *o.policy + "'");
    if (*kind != c.policy.kind) c.policy = rasim::PolicyConfig{*kind, {}, {}, {}, false, false};
  }
  if (o.beta) c.policy.beta = *o.beta;
  if (o.gamma) c.policy.gamma = *o.gamma;
  if (o.p) c.policy.p = *o.p;
  if (o.calibrate_p) c.policy.calibrate_p = true;
  if (o.calibrate_gamma) c.policy.calibrate_gamma = true;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::filesystem::path resolve_output(const std::string& flag, const std::string& from_config,
                                     std::string_view fallback) {
  if (!flag.empty()) return flag;
  if (!from_config.empty()) return from_config;
  return rasim::default_output_path(fallback);
}

std::string oracle_header() {
  return "process,level,sigma,dt,paths,capped,capped_fraction,resolution_limited,"
         "e_j,e_j_se,e_j2,e_j2_se,e_int,e_int_se,e_sj2,e_sj2_se";
}

std::string oracle_row(std::string_view process, double level, double sigma,
                       const rasim::HittingMoments& h) {
  using rasim::format_double;
  std::string s(process);
  for (double v : {level, sigma, h.dt}) s += ',' + format_double(v);
  s += ',' + std::to_string(h.n_paths) + ',' + std::to_string(h.capped);
  s += ',' + format_double(h.capped_fraction);
  s += h.resolution_limited ? ",1" : ",0";
  for (const auto& m : {h.j, h.j2, h.integral, h.sj2}) {
    s += ',' + format_double(m.mean) + ',' + format_double(m.std_error);
  }
  return s;
}

int finish_oracle(const rasim::HittingMoments& h, std::string text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
  } else {
    rasim::write_text(output, text);
  }
  if (h.resolution_limited) {
    std::cerr << "note: dt exceeds 1e-3 a^2; estimates are resolution-limited\n";
  }
  if (h.capped_fraction > rasim::kMaxCappedFraction) {
    std::cerr << "guard: " << h.capped << " of " << h.n_paths
              << " paths hit the step cap (fraction " << h.capped_fraction << ")\n";
    return rasim::kExitGuard;
  }
  return rasim::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-access remote estimation simulator"};
  app.require_subcommand(1);
  unsigned threads = 1;
  app.add_option("--threads", threads, "Worker threads; 1 gives bitwise-reproducible output")
      ->check(CLI::PositiveNumber);

  // run
  auto* run = app.add_subcommand("run", "Run one configuration");
  std::string run_config;
  std::string run_output;
  bool verify = false;
  Overrides run_over;
  run->add_option("--config", run_config, "JSON configuration file");
  run->add_option("--output,-o", run_output, "CSV output path");
  run->add_flag("--verify", verify, "Check in-loop invariants on every slot");
  add_overrides(run, run_over, true);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  std::string sweep_spec;
  std::string preset;
  std::string sweep_output;
  Overrides sweep_over;
  auto* spec_opt = sweep->add_option("--spec", sweep_spec, "JSON sweep specification");
  sweep->add_option("--preset", preset, "naee-vs-sigma2|naee-vs-epsilon|gap-vs-M")
      ->excludes(spec_opt);
  sweep->add_option("--output,-o", sweep_output, "CSV output path");
  add_overrides(sweep, sweep_over, false);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "First-passage moment tables");
  oracle->require_subcommand(1);
  std::string oracle_output;
  oracle->add_option("--output,-o", oracle_output, "CSV output path (default stdout)");
  rasim::BrownianOptions bo;
  auto* brownian = oracle->add_subcommand("brownian", "Exit of Brownian motion from (-a, a)");
  brownian->add_option("--a", bo.a, "Barrier level")->required();
  brownian->add_option("--dt", bo.dt, "Step size (default 1e-4 a^2)");
  brownian->add_option("--paths", bo.paths, "Number of paths");
  brownian->add_option("--seed", bo.seed, "Seed");
  brownian->add_option("--max-steps", bo.max_steps, "Per-path step cap");
  bool no_bridge = false;
  brownian->add_flag("--no-bridge", no_bridge, "Disable the between-step crossing check");
  rasim::WalkOptions wo;
  auto* walk = oracle->add_subcommand("walk", "Exit of a Gaussian random walk from (-beta, beta)");
  walk->add_option("--beta", wo.beta, "Threshold")->required();
  walk->add_option("--sigma", wo.sigma, "Step standard deviation");
  walk->add_option("--paths", wo.paths, "Number of paths");
  walk->add_option("--seed", wo.seed, "Seed");
  walk->add_option("--max-steps", wo.max_steps, "Per-path step cap");

  // calibrate-sat
  auto* cal = app.add_subcommand("calibrate-sat", "Pilot search for the SAT age threshold");
  std::int64_t cal_m = 500;
  double cal_eps = 0.0;
  std::uint64_t cal_seed = 1;
  std::int64_t cal_k = rasim::kPilotHorizon;
  cal->add_option("--M", cal_m, "Number of nodes");
  cal->add_option("--epsilon", cal_eps, "Erasure probability");
  cal->add_option("--seed", cal_seed, "Seed");
  cal->add_option("--pilot-K", cal_k, "Pilot horizon");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? rasim::kExitOk : rasim::kExitConfig;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    if (*run) {
      rasim::SimConfig cfg = run_config.empty() ? rasim::SimConfig{}
                                                : rasim::load_sim_config(run_config);
      apply(run_over, cfg);
      rasim::validate(cfg);
      const auto result = rasim::run_single(cfg, {threads, verify});
      const auto path = resolve_output(run_output, cfg.output, "rasim_run.csv");
      rasim::write_text(path, rasim::to_csv(result.rows(), false));
      rasim::write_text(rasim::metadata_path(path),
                        rasim::run_metadata(result, seconds_since(t0), threads));
      const auto& m = result.summary.mean;
      std::printf("%s naee=%.6g naaoi=%.6g throughput=%.6g -> %s\n",
                  std::string(rasim::to_string(result.policy.kind)).c_str(), m.naee, m.naaoi,
                  m.throughput, path.string().c_str());
      return rasim::kExitOk;
    }
    if (*sweep) {
      rasim::SweepSpec spec;
      if (!preset.empty()) {
        spec = rasim::sweep_preset(preset);
      } else if (!sweep_spec.empty()) {
        spec = rasim::load_sweep_spec(sweep_spec);
      } else {
        throw ConfigError("spec", "either --spec or --preset is required");
      }
      apply(sweep_over, spec.base);
      const auto result = rasim::run_sweep(spec, {threads, false});
      const std::string stem = preset.empty() ? "rasim_sweep.csv" : "rasim_" + preset + ".csv";
      const auto path = resolve_output(sweep_output, spec.base.output, stem);
      rasim::write_text(path, rasim::to_csv(result.rows(), true));
      rasim::write_text(rasim::metadata_path(path),
                        rasim::sweep_metadata(result, seconds_since(t0), threads));
      std::printf("%zu points -> %s\n", result.points.size(), path.string().c_str());
      return rasim::kExitOk;
    }
    if (*oracle) {
      if (*brownian) {
        bo.bridge_correction = !no_bridge;
        bo.threads = threads;
        const auto h = rasim::brownian_hitting_moments(bo);
        return finish_oracle(
            h, oracle_header() + '\n' + oracle_row("brownian", bo.a, 1.0, h) + '\n',
            oracle_output);
      }
      wo.threads = threads;
      const auto h = rasim::random_walk_hitting_moments(wo);
      return finish_oracle(
          h, oracle_header() + '\n' + oracle_row("walk", wo.beta, wo.sigma, h) + '\n',
          oracle_output);
    }
    if (*cal) {
      const auto c = rasim::calibrate_sat_gamma(cal_m, cal_eps, cal_seed, cal_k, threads);
      std::cout << "gamma,pilot_naaoi,selected\n";
      for (const auto& [g, v] : c.evaluated) {
        std::cout << g << ',' << rasim::format_double(v) << ',' << (g == c.gamma ? 1 : 0) << '\n';
      }
      return rasim::kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return rasim::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return rasim::kExitConfig;
  } catch (const rasim::GuardError& e) {
    std::cerr << "guard failure: " << e.what() << '\n';
    return rasim::kExitGuard;
  } catch (const rasim::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return rasim::kExitIo;
  }
  return rasim::kExitOk;
}
