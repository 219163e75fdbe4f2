// Copyright 2026 The insider-graph Authors
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

#include "insider/pipeline.h"

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "insider/error.h"
#include "oracles.h"

namespace insider {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int line_count(const fs::path& p) {
  const auto text = slurp(p);
  return static_cast<int>(std::count(text.begin(), text.end(), '\n'));
}

// A small synthetic graph keeps these runs well under a second.
PipelineConfig small_synth(const fs::path& out) {
  PipelineConfig c;
  c.output_dir = out;
  c.synth.n_users = 60;
  c.synth.k_clusters = 3;
  c.synth.n_outliers = 4;
  c.synth.n_attributes = 20;
  c.cluster.grasp_iterations = 300;
  return c;
}

PipelineConfig pipeline_on(const fs::path& graph_dir, const fs::path& out) {
  PipelineConfig c;
  c.graph_dir = graph_dir;
  c.output_dir = out;
  c.cluster.grasp_iterations = 300;
  return c;
}

int run_cli(const std::string& args, const fs::path& stderr_file) {
  const std::string cmd =
      std::string(INSIDER_CLI_PATH) + " " + args + " 2>" + stderr_file.string() + " >/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Grid, OrdersSMinOuter) {
  const auto cases = parse_grid("n_min=3..5;s_min=2..10", 3, 2);
  ASSERT_EQ(cases.size(), 27u);
  EXPECT_EQ(cases[0].n_min, 3);
  EXPECT_EQ(cases[0].s_min, 2);
  EXPECT_EQ(cases[1].n_min, 4);
  EXPECT_EQ(cases[1].s_min, 2);
  EXPECT_EQ(cases[3].n_min, 3);
  EXPECT_EQ(cases[3].s_min, 3);
  EXPECT_EQ(cases[26].n_min, 5);
  EXPECT_EQ(cases[26].s_min, 10);
}

TEST(Grid, ListsDefaultsAndErrors) {
  const auto cases = parse_grid("s_min=4,2,4", 6, 9);
  ASSERT_EQ(cases.size(), 2u);
  EXPECT_EQ(cases[0].n_min, 6);
  EXPECT_EQ(cases[0].s_min, 2);
  EXPECT_EQ(parse_grid("", 3, 2).size(), 1u);
  EXPECT_THROW(parse_grid("k=1", 3, 2), ConfigError);
  EXPECT_THROW(parse_grid("n_min=5..3", 3, 2), ConfigError);
  EXPECT_THROW(parse_grid("n_min", 3, 2), ConfigError);
}

TEST(Config, JsonKeysAndOverrides) {
  const auto c = config_from_json(nlohmann::json::parse(R"({
    "n_min": 4, "s_min": 3, "gamma_min": 0.6, "seed": 9, "threads": 2,
    "business_start": "09:30", "business_days": ["Mon", "Tue"],
    "score_variants": [1, 6], "synth_n_users": 50, "algorithm": "exact"
  })"));
  EXPECT_EQ(c.cluster.n_min, 4);
  EXPECT_EQ(c.cluster.s_min, 3);
  EXPECT_EQ(c.cluster.gamma_min, 0.6);
  EXPECT_EQ(c.cluster.rng_seed, 9u);
  EXPECT_EQ(c.synth.rng_seed, 9u);
  EXPECT_EQ(c.threads, 2);
  EXPECT_EQ(c.calendar.business_start, std::chrono::minutes(9 * 60 + 30));
  EXPECT_TRUE(c.calendar.business_days[1]);
  EXPECT_FALSE(c.calendar.business_days[3]);
  EXPECT_EQ(c.score_variants, (std::vector<int>{1, 6}));
  EXPECT_EQ(c.synth.n_users, 50);
  EXPECT_EQ(c.algorithm, "exact");
  // to_json round-trips.
  const auto again = config_from_json(nlohmann::json::parse(c.to_json().dump()));
  EXPECT_EQ(again.to_json(), c.to_json());

  PipelineConfig o;
  apply_override(o, "w=0.2");
  apply_override(o, "grid=n_min=3..4");
  EXPECT_EQ(o.cluster.w, 0.2);
  EXPECT_EQ(o.grid, "n_min=3..4");
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"bogus": 1})")), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"n_min": "three"})")), ConfigError);
  // Ranges are checked once every layer is applied.
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"n_min": 1})")).validate(), ConfigError);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"business_start": "25:00"})")).validate(),
               ConfigError);
  PipelineConfig c;
  EXPECT_THROW(apply_override(c, "novalue"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), MissingInputError);
}

TEST(ExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(ConfigError("x")), 2);
  EXPECT_EQ(exit_code_for(MissingInputError("x")), 3);
  EXPECT_EQ(exit_code_for(SchemaError("x")), 4);
  EXPECT_EQ(exit_code_for(DataError("x")), 4);
  EXPECT_EQ(exit_code_for(OracleBoundError("x")), 5);
  EXPECT_EQ(exit_code_for(ConvergenceError("x", 1e-3)), 6);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), 1);
  EXPECT_EQ(diagnostic_for(MissingInputError("gone")), "missing input: gone");
}

TEST(Stages, SynthThenPipelineWritesEverything) {
  const auto dir = testing::fresh_dir("pipe_full");
  run_stage(Stage::kSynth, small_synth(dir / "synth"));
  for (const char* f : {"nodes.csv", "edges.csv", "ground_truth.txt", "planted.jsonl",
                        "manifest.synth.json"}) {
    EXPECT_TRUE(fs::exists(dir / "synth" / f)) << f;
  }
  const auto report = run_stage(Stage::kPipeline, pipeline_on(dir / "synth", dir / "out"));
  for (const char* f : {"clusters.jsonl", "centrality.csv", "scores.csv", "ranking.1.csv",
                        "ranking.6.csv", "roc.1.csv", "distribution.1.csv", "auc_summary.csv",
                        "cluster_summary.csv", "manifest.pipeline.json"}) {
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
  }
  EXPECT_EQ(line_count(dir / "out" / "scores.csv"), 61);
  EXPECT_EQ(line_count(dir / "out" / "auc_summary.csv"), 2);
  const auto manifest = nlohmann::json::parse(slurp(dir / "out" / "manifest.pipeline.json"));
  EXPECT_EQ(manifest["stage"], "pipeline");
  EXPECT_EQ(manifest["inputs"][0]["sha256"].get<std::string>().size(), 64u);
  EXPECT_TRUE(report.warnings.empty());
}

TEST(Stages, GridWritesOneRowPerCase) {
  const auto dir = testing::fresh_dir("pipe_grid");
  run_stage(Stage::kSynth, small_synth(dir / "synth"));
  auto c = pipeline_on(dir / "synth", dir / "out");
  c.grid = "n_min=3..5;s_min=2..10";
  c.cluster.grasp_iterations = 100;
  run_stage(Stage::kPipeline, c);
  EXPECT_EQ(line_count(dir / "out" / "auc_summary.csv"), 28);
  EXPECT_EQ(line_count(dir / "out" / "cluster_summary.csv"), 28);
  EXPECT_TRUE(fs::exists(dir / "out" / "case_A" / "scores.csv"));
  EXPECT_TRUE(fs::exists(dir / "out" / "case_AA" / "scores.csv"));
}

TEST(Stages, RepeatRunsAreByteIdentical) {
  const auto dir = testing::fresh_dir("pipe_repeat");
  run_stage(Stage::kSynth, small_synth(dir / "synth"));
  run_stage(Stage::kPipeline, pipeline_on(dir / "synth", dir / "a"));
  auto threaded = pipeline_on(dir / "synth", dir / "b");
  threaded.threads = 3;
  run_stage(Stage::kPipeline, threaded);
  for (const char* f : {"clusters.jsonl", "centrality.csv", "scores.csv", "roc.1.csv",
                        "auc_summary.csv"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
}

// Running the stages one at a time gives the same artifacts as the
// combined run.
TEST(Stages, IndividuallyRestartable) {
  const auto dir = testing::fresh_dir("pipe_restart");
  run_stage(Stage::kSynth, small_synth(dir / "synth"));
  run_stage(Stage::kPipeline, pipeline_on(dir / "synth", dir / "whole"));
  const auto step = pipeline_on(dir / "synth", dir / "steps");
  run_stage(Stage::kCluster, step);
  run_stage(Stage::kRank, step);
  run_stage(Stage::kEval, step);
  for (const char* f : {"clusters.jsonl", "scores.csv", "roc.1.csv"}) {
    EXPECT_EQ(slurp(dir / "whole" / f), slurp(dir / "steps" / f)) << f;
  }
  // Rank can be rerun on its own from the saved clusters.
  fs::remove(dir / "steps" / "scores.csv");
  run_stage(Stage::kRank, step);
  EXPECT_EQ(slurp(dir / "whole" / "scores.csv"), slurp(dir / "steps" / "scores.csv"));
}

TEST(Stages, LogCorpusEndToEnd) {
  const auto dir = testing::fresh_dir("pipe_logs");
  auto s = small_synth(dir / "corpus");
  s.synth_mode = "logs";
  s.synth.n_days = 5;
  run_stage(Stage::kSynth, s);
  PipelineConfig c;
  c.log_dir = dir / "corpus";
  c.output_dir = dir / "out";
  c.cluster.grasp_iterations = 100;
  run_stage(Stage::kPipeline, c);
  for (const char* f : {"ingest/logon.csv", "attributes.csv", "nodes.csv", "edges.csv",
                        "scores.csv", "auc_summary.csv"}) {
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
  }
}

TEST(Stages, EvalWithoutGroundTruthWarns) {
  const auto dir = testing::fresh_dir("pipe_no_truth");
  run_stage(Stage::kSynth, small_synth(dir / "synth"));
  fs::remove(dir / "synth" / "ground_truth.txt");
  const auto report = run_stage(Stage::kPipeline, pipeline_on(dir / "synth", dir / "out"));
  EXPECT_FALSE(report.warnings.empty());
  EXPECT_TRUE(fs::exists(dir / "out" / "scores.csv"));
  EXPECT_FALSE(fs::exists(dir / "out" / "auc_summary.csv"));
}

TEST(Stages, ExactOnLargeGraphIsOracleBoundError) {
  const auto dir = testing::fresh_dir("pipe_exact");
  run_stage(Stage::kSynth, small_synth(dir / "synth"));
  auto c = pipeline_on(dir / "synth", dir / "out");
  c.algorithm = "exact";
  EXPECT_THROW(run_stage(Stage::kCluster, c), OracleBoundError);
}

TEST(Cli, ClusterWithoutArtifactsFails) {
  const auto dir = testing::fresh_dir("cli_missing");
  const int rc = run_cli("cluster --graph-dir " + (dir / "nothing").string() + " -o " +
                             (dir / "out").string(),
                         dir / "stderr.txt");
  EXPECT_EQ(rc, 3);
  EXPECT_NE(slurp(dir / "stderr.txt").find("missing graph artifacts"), std::string::npos);
}

TEST(Cli, BadConfigExitsTwo) {
  const auto dir = testing::fresh_dir("cli_config");
  EXPECT_EQ(run_cli("synth --set n_min=0 -o " + dir.string(), dir / "stderr.txt"), 2);
  EXPECT_EQ(slurp(dir / "stderr.txt").rfind("invalid config:", 0), 0u);
}

TEST(Cli, EnvironmentSetsOutputButFlagWins) {
  const auto dir = testing::fresh_dir("cli_env");
  const std::string env = std::string("INSIDER_OUTPUT_DIR=") + (dir / "env").string() + " ";
  const std::string small = " --set synth_n_users=30 --set synth_k_clusters=2 --set synth_n_outliers=2";
  EXPECT_EQ(std::system((env + INSIDER_CLI_PATH + " synth" + small + " 2>/dev/null").c_str()), 0);
  EXPECT_TRUE(fs::exists(dir / "env" / "nodes.csv"));
  const std::string flagged = env + INSIDER_CLI_PATH + " synth" + small + " -o " +
                              (dir / "flag").string() + " 2>/dev/null";
  EXPECT_EQ(std::system(flagged.c_str()), 0);
  EXPECT_TRUE(fs::exists(dir / "flag" / "nodes.csv"));
}

}  // namespace
}  // namespace insider
