#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "rasim/config.hpp"

namespace rasim {
namespace {

SimConfig sample() {
  SimConfig c;
  c.M = 123;
  c.K = 4567;
  c.sigma2 = 0.1 + 0.2;
  c.epsilon = 1.0 / 3.0;
  c.policy = PolicyConfig{PolicyKind::kEbt, std::sqrt(2.0), std::nullopt, std::nullopt, false,
                          false};
  c.seed = 0xfedcba9876543210ULL;
  c.replications = 3;
  c.burn_in = 7;
  c.output = "out/x.csv";
  return c;
}

TEST(SimConfig, RoundTripIsExact) {
  const auto c = sample();
  EXPECT_EQ(parse_sim_config(serialize(c)), c);
}

TEST(SimConfig, RoundTripWithEveryPolicy) {
  for (auto kind : {PolicyKind::kStationaryRandomized, PolicyKind::kSat, PolicyKind::kCentralMw}) {
    auto c = sample();
    c.policy = PolicyConfig{kind, std::nullopt, 17, 0.125, true, true};
    EXPECT_EQ(parse_sim_config(serialize(c)), c);
  }
}

TEST(SimConfig, NullParametersAreUnset) {
  const auto c = parse_sim_config(R"({"policy": {"kind": "sat", "gamma": null, "beta": null}})");
  EXPECT_EQ(c.policy.kind, PolicyKind::kSat);
  EXPECT_FALSE(c.policy.gamma);
  EXPECT_FALSE(c.policy.beta);
}

TEST(SimConfig, MissingFieldsKeepDefaults) {
  const auto c = parse_sim_config("{}");
  EXPECT_EQ(c, SimConfig{});
  EXPECT_EQ(c.M, 500);
  EXPECT_EQ(c.K, 500'000);
  EXPECT_EQ(c.replications, 10);
}

TEST(SimConfig, PolicyMayBeAName) {
  EXPECT_EQ(parse_sim_config(R"({"policy": "greedy"})").policy.kind, PolicyKind::kCentralGreedy);
}

TEST(SimConfig, UnknownFieldRejected) {
  try {
    parse_sim_config(R"({"M": 5, "sigma": 1})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "sigma");
  }
}

TEST(SimConfig, WrongTypeRejected) {
  try {
    parse_sim_config(R"({"M": 5.5})");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "M");
  }
  EXPECT_THROW(parse_sim_config(R"({"seed": -1})"), ConfigError);
  EXPECT_THROW(parse_sim_config(R"({"policy": {"kind": "aat"}})"), ConfigError);
  EXPECT_THROW(parse_sim_config("{"), ConfigError);
}

TEST(Validate, FieldSpecificErrors) {
  auto expect_field = [](SimConfig c, const std::string& field) {
    try {
      validate(c);
      ADD_FAILURE() << "no error for " << field;
    } catch (const ConfigError& e) {
      EXPECT_EQ(e.field(), field);
    }
  };
  SimConfig c;
  c.M = 0;
  expect_field(c, "M");
  c = SimConfig{};
  c.K = 0;
  expect_field(c, "K");
  c = SimConfig{};
  c.sigma2 = 0.0;
  expect_field(c, "sigma2");
  c = SimConfig{};
  c.epsilon = 1.0;
  expect_field(c, "epsilon");
  c = SimConfig{};
  c.replications = 0;
  expect_field(c, "replications");
  c = SimConfig{};
  c.burn_in = -1;
  expect_field(c, "burn_in");
  c = SimConfig{};
  c.policy.gamma = 0;
  expect_field(c, "policy.gamma");
  c = SimConfig{};
  c.policy.p = 1.5;
  expect_field(c, "policy.p");
  EXPECT_NO_THROW(validate(SimConfig{}));
}

TEST(SweepSpec, RoundTrip) {
  SweepSpec s;
  s.base = sample();
  s.axis = SweepAxis::kEpsilon;
  s.values = {0.0, 0.1, 0.7};
  s.policies = {PolicyConfig{PolicyKind::kSat, {}, {}, {}, false, false},
                PolicyConfig{PolicyKind::kEbt, 3.5, {}, {}, false, false}};
  EXPECT_EQ(parse_sweep_spec(serialize(s)), s);
}

TEST(SweepSpec, ValidationRequiresValuesAndPolicies) {
  SweepSpec s;
  s.policies = {PolicyConfig{}};
  EXPECT_THROW(validate(s), ConfigError);
  s.values = {1.0};
  EXPECT_NO_THROW(validate(s));
  s.policies.clear();
  EXPECT_THROW(validate(s), ConfigError);
}

TEST(SweepSpec, AxisValuesAreValidated) {
  SweepSpec s;
  s.policies = {PolicyConfig{}};
  s.axis = SweepAxis::kEpsilon;
  s.values = {0.5, 1.0};
  EXPECT_THROW(validate(s), ConfigError);
  s.axis = SweepAxis::kM;
  s.values = {50.5};
  EXPECT_THROW(validate(s), ConfigError);
}

TEST(SweepSpec, BadAxisRejected) {
  EXPECT_THROW(parse_sweep_spec(R"({"axis": "K"})"), ConfigError);
}

TEST(ApplyAxis, SetsField) {
  EXPECT_EQ(apply_axis(SimConfig{}, SweepAxis::kSigma2, 4.0).sigma2, 4.0);
  EXPECT_EQ(apply_axis(SimConfig{}, SweepAxis::kEpsilon, 0.3).epsilon, 0.3);
  EXPECT_EQ(apply_axis(SimConfig{}, SweepAxis::kM, 50.0).M, 50);
}

TEST(LoadConfig, ReadsFileAndReportsMissing) {
  const auto path = std::filesystem::temp_directory_path() / "rasim_test_config.json";
  {
    std::ofstream out(path);
    out << serialize(sample());
  }
  EXPECT_EQ(load_sim_config(path), sample());
  std::filesystem::remove(path);
  EXPECT_THROW(load_sim_config(path), ConfigError);
}

}  // namespace
}  // namespace rasim
