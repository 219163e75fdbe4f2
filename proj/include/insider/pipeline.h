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

// Stage orchestration. Every stage reads its inputs from files and writes
// its outputs into the output directory, so any stage can be rerun alone.
//
//   ingest    log_dir/{logon,device,email,file}.csv + ldap_dir
//             -> ingest/{logon,device,email,file}.csv, directory.csv, rejects.csv
//   features  ingest/* -> attributes.csv (raw, 125 columns)
//   graph     ingest/* + attributes.csv -> nodes.csv (min-max normalized), edges.csv
//   cluster   nodes.csv + edges.csv -> clusters.jsonl
//   rank      nodes.csv + edges.csv + clusters.jsonl
//             -> centrality.csv, scores.csv, ranking.<v>.csv
//   eval      scores.csv + ground truth
//             -> roc.<v>.csv, distribution.<v>.csv, auc_summary.csv
//   synth     -> a log corpus (synth_mode "logs") or nodes.csv, edges.csv
//             (synth_mode "graph"), plus ground_truth.txt
//   pipeline  ingest..eval, or cluster..eval when graph_dir is set. With a
//             grid, cluster..eval run once per case under case_<label>/ and
//             auc_summary.csv gets one row per case.
//
// Each run also writes manifest.<stage>.json (config echo, SHA-256 of every
// input file, seed, per-step timings). Only the manifest carries wall-clock
// data; every other output is a pure function of config and inputs.

#ifndef INSIDER_PIPELINE_H_
#define INSIDER_PIPELINE_H_

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "insider/clusterer.h"
#include "insider/features.h"
#include "insider/synth.h"
#include "json.hpp"

namespace insider {

// Overrides output_dir when set and non-empty.
inline constexpr const char* kOutputDirEnv = "INSIDER_OUTPUT_DIR";

enum class Stage { kIngest, kFeatures, kGraph, kCluster, kRank, kEval, kSynth, kPipeline };

std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view name);

// Grid syntax: "n_min=3,4,5;s_min=2..10". Values are comma lists or
// inclusive ranges; both keys default to the single configured value.
struct GridCase {
  int n_min = 0;
  int s_min = 0;
};
// Cases ordered by s_min, then n_min. Throws ConfigError.
std::vector<GridCase> parse_grid(std::string_view text, int default_n_min, int default_s_min);

// Flat JSON keys; see README for the full list.
struct PipelineConfig {
  std::filesystem::path log_dir;
  std::filesystem::path ldap_dir;  // defaults to log_dir/LDAP
  std::filesystem::path graph_dir;
  std::filesystem::path output_dir = "out";
  std::filesystem::path ground_truth;  // defaults to <input dir>/ground_truth.txt

  CalendarConfig calendar;
  std::string internal_domain = "dtaa.com";
  bool normalize = true;

  ClusterParams cluster;
  std::string algorithm = "grasp";  // or "exact"

  double eigen_tol = 1e-10;
  int eigen_max_iter = 10000;

  std::vector<int> score_variants = {1, 2, 3, 4, 5, 6};
  bool centrality_outside_sum = false;

  std::string grid;
  int threads = 1;

  std::string synth_mode = "graph";
  SynthSpec synth;

  // Throws ConfigError.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

// Unknown keys and ill-typed values are ConfigErrors.
PipelineConfig config_from_json(const nlohmann::json& j);
PipelineConfig load_config(const std::filesystem::path& path);
// Applies one "key=value" override; the value is parsed as JSON when
// possible and as a string otherwise.
void apply_override(PipelineConfig& config, std::string_view assignment);

struct StepTiming {
  std::string step;
  double seconds = 0;
};

struct StageReport {
  std::vector<std::string> outputs;  // relative to the output directory
  std::vector<std::filesystem::path> inputs;
  std::vector<StepTiming> timings;
  std::vector<std::string> warnings;
};

// Runs `stage` and writes its manifest. Throws on failure.
StageReport run_stage(Stage stage, const PipelineConfig& config);

// Process exit status for a failure: 2 config, 3 missing input,
// 4 schema/data, 5 oracle bound, 6 convergence, 1 anything else.
int exit_code_for(const std::exception& e);
// One-line diagnostic prefixed with the failure class.
std::string diagnostic_for(const std::exception& e);

std::string sha256_file(const std::filesystem::path& path);

}  // namespace insider

#endif  // INSIDER_PIPELINE_H_
