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

// Synthetic attributed graphs with planted twofold clusters and community
// outliers, and small log corpora in the ingest formats.
//
// Graph layout: k disjoint groups, each wired with probability p_in and
// repaired to gamma >= kPlantedGamma, coherent (range < width) in its own
// random subspace and uniform on [0, 1] elsewhere. Outliers are attached to
// a host group (round robin) with probability p_in towards its members, but
// every host-subspace value lies at least `outlier_gap` outside the group's
// interval. All other pairs are wired with probability p_out. Each column
// is pinned to span exactly [0, 1] using unconstrained cells, so min-max
// normalization leaves the matrix unchanged.

#ifndef INSIDER_SYNTH_H_
#define INSIDER_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "insider/clusterer.h"
#include "insider/eval.h"
#include "insider/features.h"
#include "insider/graph.h"

namespace insider {

inline constexpr double kPlantedGamma = 0.6;

struct SynthSpec {
  int n_users = 200;
  int k_clusters = 8;
  int cluster_size_min = 8;
  int cluster_size_max = 15;
  int subspace_min = 10;
  int subspace_max = 10;
  int n_attributes = 40;
  double p_in = 0.9;
  double p_out = 0.02;
  // Planted coherence width; members of a group span less than this.
  double width = 0.08;
  int n_outliers = 10;
  // Minimum distance between an outlier's host-subspace value and the
  // host group's interval.
  double outlier_gap = 0.25;
  std::uint64_t rng_seed = 1;

  // Log corpus only.
  int n_days = 20;
  std::string start_date = "01/04/2010";  // a Monday
  std::string internal_domain = "dtaa.com";
  // Vertex indices with heavy after-hours logons.
  std::set<int> after_hours_users;
  // Vertex indices that produce no events at all.
  std::set<int> inactive_users;

  // Throws ConfigError for an infeasible or out-of-range spec.
  void validate() const;
};

struct SynthGraph {
  AttributedGraph graph;
  GroundTruth truth;
  // Planted clusters in vertex indices, with gamma and quality under the
  // default ClusterParams exponents.
  std::vector<TwofoldCluster> planted;
  // Host group (index into `planted`) of each outlier vertex.
  std::vector<std::pair<VertexId, int>> outlier_hosts;
};

// Users are "U0000", "U0001", ...; attributes "attr_00", ... The vertex
// order is a seeded permutation, so ids carry no structure. Runs the
// planted-cluster self-check and throws std::logic_error if it fails.
SynthGraph generate_attributed_graph(const SynthSpec& spec);

// Writes nodes.csv, edges.csv and ground_truth.txt into `dir`.
void write_synth_graph(const SynthGraph& synth, const std::filesystem::path& dir);

struct SynthLogs {
  OrgDirectory directory;
  GroundTruth truth;
  std::size_t events = 0;
};

// Writes logon.csv, device.csv, email.csv, file.csv, LDAP/2010-01.csv and
// ground_truth.txt into `dir`. Email traffic follows the generated graph
// topology, each planted group shares one behaviour profile, and outliers
// keep the host profile but log on and copy files outside business hours.
// Users listed in `inactive_users` emit nothing. At most 200 users and 60
// days (ConfigError otherwise). Output is byte-identical for a fixed spec.
SynthLogs generate_logs(const SynthSpec& spec, const CalendarConfig& calendar,
                        const std::filesystem::path& dir);

}  // namespace insider

#endif  // INSIDER_SYNTH_H_
