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

// Command-line front end. Precedence, lowest first: built-in defaults,
// --config file, $INSIDER_OUTPUT_DIR, --set overrides, dedicated flags.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "insider/pipeline.h"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> grid;
  std::optional<std::string> output;
  std::optional<std::string> log_dir;
  std::optional<std::string> graph_dir;
  std::optional<std::string> ground_truth;
  std::vector<std::string> overrides;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file with flat keys");
  cmd->add_option("--seed", f.seed, "RNG seed for clustering and synthesis");
  cmd->add_option("--threads", f.threads, "Worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--grid", f.grid, "Parameter grid, e.g. \"n_min=3,4,5;s_min=2..10\"");
  cmd->add_option("-o,--output", f.output, "Output directory");
  cmd->add_option("--log-dir", f.log_dir, "Directory with logon/device/email/file.csv");
  cmd->add_option("--graph-dir", f.graph_dir, "Directory with nodes.csv and edges.csv");
  cmd->add_option("--ground-truth", f.ground_truth, "File with one malicious user id per line");
  cmd->add_option("--set", f.overrides, "Config override key=value (repeatable)");
}

insider::PipelineConfig build_config(const Flags& f) {
  insider::PipelineConfig c;
  if (!f.config.empty()) c = insider::load_config(f.config);
  if (const char* env = std::getenv(insider::kOutputDirEnv); env != nullptr && *env != '\0') {
    c.output_dir = env;
  }
  for (const auto& o : f.overrides) insider::apply_override(c, o);
  if (f.seed) {
    c.cluster.rng_seed = *f.seed;
    c.synth.rng_seed = *f.seed;
  }
  if (f.threads) c.threads = *f.threads;
  if (f.grid) c.grid = *f.grid;
  if (f.output) c.output_dir = *f.output;
  if (f.log_dir) c.log_dir = *f.log_dir;
  if (f.graph_dir) c.graph_dir = *f.graph_dir;
  if (f.ground_truth) c.ground_truth = *f.ground_truth;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Insider threat detection on attributed user graphs"};
  app.require_subcommand(1);
  Flags flags;
  bool print_config = false;
  struct Command {
    insider::Stage stage;
    const char* help;
  };
  const std::vector<Command> commands = {
      {insider::Stage::kIngest, "Parse activity logs and LDAP snapshots"},
      {insider::Stage::kFeatures, "Extract the per-user attribute table"},
      {insider::Stage::kGraph, "Build the attributed user graph"},
      {insider::Stage::kCluster, "Find twofold (subgraph, subspace) clusters"},
      {insider::Stage::kRank, "Compute centralities and outlier scores"},
      {insider::Stage::kEval, "ROC/AUC against ground truth"},
      {insider::Stage::kSynth, "Generate a synthetic graph or log corpus"},
      {insider::Stage::kPipeline, "Run all stages, optionally over a parameter grid"},
  };
  std::vector<std::pair<CLI::App*, insider::Stage>> subs;
  for (const auto& cmd : commands) {
    auto* sub = app.add_subcommand(std::string(insider::to_string(cmd.stage)), cmd.help);
    add_common_flags(sub, flags);
    sub->add_flag("--print-config", print_config, "Print the effective config and exit");
    subs.emplace_back(sub, cmd.stage);
  }
  CLI11_PARSE(app, argc, argv);

  for (const auto& [sub, stage] : subs) {
    if (!sub->parsed()) continue;
    try {
      const insider::PipelineConfig config = build_config(flags);
      if (print_config) {
        std::cout << config.to_json().dump(2) << '\n';
        return 0;
      }
      const auto report = insider::run_stage(stage, config);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
      std::cerr << insider::to_string(stage) << ": wrote " << report.outputs.size()
                << " files to " << config.output_dir.string() << '\n';
      return 0;
    } catch (const std::exception& e) {
      std::cerr << insider::diagnostic_for(e) << '\n';
      return insider::exit_code_for(e);
    }
  }
  return 1;
}
