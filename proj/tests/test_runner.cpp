// Copyright 2026 The cascade-qst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <sstream>

#include "cascade/runner.hpp"
#include "oracles.hpp"

namespace cascade {
namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cascade_sim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::stringstream ss(text);
  for (std::string l; std::getline(ss, l);) v.push_back(l);
  return v;
}

TEST(Config, ParsesKeysAndComments) {
  ScenarioConfig c;
  apply_config_text(c,
                    "# loss scan\n"
                    "kappa_prime = 0.02   # per unit time\n"
                    "gamma_over_delta = 0, 0.02\n"
                    "\n"
                    "  seed=42\n"
                    "format = json\n"
                    "require_nonnegative = false\n"
                    "tail = constant:0.5\n");
  EXPECT_EQ(c.params.kappa_prime, 0.02);
  EXPECT_EQ(c.gamma_over_delta, (std::vector<double>{0.0, 0.02}));
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.format, "json");
  EXPECT_EQ(make_tail(c).level(), 0.5);
}

TEST(Config, RejectsUnknownKeyAndBadValues) {
  ScenarioConfig c;
  try {
    apply_config_text(c, "kapa = 1\n");
    FAIL();
  } catch (const InvalidParameter& e) {
    EXPECT_EQ(e.field(), "kapa");
  }
  EXPECT_THROW(apply_config_text(c, "kappa = fast\n"), InvalidParameter);
  EXPECT_THROW(apply_config_text(c, "seed = -3\n"), InvalidParameter);
  EXPECT_THROW(apply_config_text(c, "just words\n"), InvalidParameter);
  c = {};
  c.format = "xml";
  EXPECT_THROW(c.validate(), InvalidParameter);
}

TEST(Config, TailFromCsv) {
  const auto dir = oracle::fresh_dir("tail");
  detail::write_file(dir / "tail.csv", "t,g1\n0,1\n5,1\n10,1\n");
  ScenarioConfig c;
  c.tail = "file:" + (dir / "tail.csv").string();
  const TailShape tail = make_tail(c);
  EXPECT_FALSE(tail.is_constant());
  EXPECT_NEAR(tail.value(7.3), 1.0, 1e-15);
  c.tail = "file:" + (dir / "missing.csv").string();
  EXPECT_THROW(make_tail(c), InvalidParameter);
  c.tail = "gaussian";
  EXPECT_THROW(make_tail(c), InvalidParameter);
}

TEST(Cli, BadToleranceIsConfigurationError) {
  const auto r = run_cli({"transfer", "--tol", "-1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("tol"), std::string::npos);
}

TEST(Cli, UnknownFlagAndMissingSubcommand) {
  EXPECT_EQ(run_cli({"transfer", "--bogus"}).code, 1);
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"transfer", "--format", "xml"}).code, 1);
}

TEST(Cli, UnknownConfigKey) {
  const auto dir = oracle::fresh_dir("cfg");
  detail::write_file(dir / "run.cfg", "kapa = 2\n");
  const auto r = run_cli({"transfer", "--config", (dir / "run.cfg").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("kapa"), std::string::npos);
}

TEST(Cli, NegativeTailRejected) {
  const auto dir = oracle::fresh_dir("negative_tail");
  detail::write_file(dir / "run.cfg", "tail = constant:-1\n");
  const auto r = run_cli({"synthesize", "--config", (dir / "run.cfg").string(), "--out", dir.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("'tail'"), std::string::npos);
}

TEST(Cli, TransferWritesCsvAndSummary) {
  const auto dir = oracle::fresh_dir("transfer");
  const auto r = run_cli({"transfer", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(oracle::slurp(dir / "transfer.csv"));
  ASSERT_EQ(rows.size(), 2002u);
  EXPECT_EQ(rows.front(), "t,g1,g2,alpha1_sq,alpha2_sq,beta_a_sq,beta_s_abs,norm");
  EXPECT_EQ(oracle::slurp(dir / "transfer.csv").find('\r'), std::string::npos);
  const json summary = json::parse(oracle::slurp(dir / "transfer_summary.json"));
  EXPECT_GE(summary.at("fidelity").get<double>(), 0.999);
  EXPECT_LE(summary.at("max_dark_residual").get<double>(), 1e-6);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
}

TEST(Cli, SweepJson) {
  const auto dir = oracle::fresh_dir("sweep");
  const auto r = run_cli({"sweep", "--format", "json", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const SweepResult res = json::parse(oracle::slurp(dir / "sweep.json")).get<SweepResult>();
  EXPECT_EQ(res.points.size(), 33u);
  EXPECT_TRUE(res.ordered_by_gamma);
  for (bool b : res.row_nonincreasing) EXPECT_TRUE(b);
  EXPECT_NEAR(res.at(0, 0).fidelity, 1.0, 1e-3);
}

TEST(Cli, SweepCsvCurves) {
  const auto dir = oracle::fresh_dir("sweep_csv");
  detail::write_file(dir / "run.cfg", "kappa_prime_over_kappa = 0, 0.05\ngamma_over_delta = 0, 0.01\n");
  const auto r = run_cli({"sweep", "--config", (dir / "run.cfg").string(), "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(oracle::slurp(dir / "sweep.csv")).size(), 5u);
  EXPECT_EQ(lines(oracle::slurp(dir / "sweep_curve_gamma_over_delta_0.01.csv")).size(), 3u);
  EXPECT_TRUE(std::filesystem::exists(dir / "sweep_curve_gamma_over_delta_0.csv"));
}

TEST(Cli, SynthesizeAndQubitSphere) {
  const auto dir = oracle::fresh_dir("synth");
  ASSERT_EQ(run_cli({"synthesize", "--out", dir.string()}).code, 0);
  const auto rows = lines(oracle::slurp(dir / "pulses.csv"));
  EXPECT_EQ(rows.size(), 20002u);
  const json s = json::parse(oracle::slurp(dir / "synthesis_summary.json"));
  EXPECT_NEAR(s.at("alpha1_at_0").get<double>(), 0.5, 1e-7);
  EXPECT_NEAR(s.at("beta_a_at_0").get<double>(), -0.7071068, 1e-7);
  EXPECT_NEAR(s.at("g1_at_0_minus").get<double>(), 1.0, 1e-6);

  ASSERT_EQ(run_cli({"qubit-sphere", "--out", dir.string()}).code, 0);
  const json q = json::parse(oracle::slurp(dir / "qubit_sphere_summary.json"));
  EXPECT_GE(q.at("min_fidelity").get<double>(), 0.999);
  EXPECT_NEAR(q.at("theta_zero_fidelity").get<double>(), 1.0, 1e-12);
  EXPECT_EQ(lines(oracle::slurp(dir / "qubit_sphere.csv")).size(), 13u);
}

TEST(Cli, TrajectoriesAreByteDeterministic) {
  const auto a = oracle::fresh_dir("traj_a");
  const auto b = oracle::fresh_dir("traj_b");
  detail::write_file(a / "run.cfg", "n_traj = 40\npulse_mode = mismatched\n");
  for (const auto& dir : {a, b})
    ASSERT_EQ(run_cli({"trajectories", "--config", (a / "run.cfg").string(), "--seed", "17",
                       "--out", dir.string()})
                  .code,
              0);
  EXPECT_EQ(oracle::slurp(a / "trajectories.csv"), oracle::slurp(b / "trajectories.csv"));
  EXPECT_EQ(oracle::slurp(a / "trajectories_summary.json"),
            oracle::slurp(b / "trajectories_summary.json"));
  EXPECT_EQ(lines(oracle::slurp(a / "trajectories.csv")).size(), 41u);
}

TEST(Json, SummariesRoundTrip) {
  TransferSummary t;
  t.fidelity = 0.1 + 0.2;
  t.max_dark_residual = 5.5e-14;
  t.warnings = {"a", "b"};
  EXPECT_EQ(json::parse(json(t).dump()).get<TransferSummary>(), t);

  SweepResult s;
  s.kappa_prime_over_kappa = {0, 0.1};
  s.gamma_over_delta = {0};
  s.points = {{0, 0, 0.99998, 1e-5}, {0.1, 0, 1.0 / 3.0, 0.2}};
  s.row_nonincreasing = {true};
  s.ordered_by_gamma = true;
  EXPECT_EQ(json::parse(json(s).dump()).get<SweepResult>(), s);

  TrajectorySummary r;
  r.n_traj = 2000;
  r.seed = 0xFFFFFFFFFFFFull;
  r.jump_fraction = 0.997;
  EXPECT_EQ(json::parse(json(r).dump()).get<TrajectorySummary>(), r);
}

TEST(Format, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123})
    EXPECT_EQ(std::stod(detail::fmt(v)), v);
}

}  // namespace
}  // namespace cascade
