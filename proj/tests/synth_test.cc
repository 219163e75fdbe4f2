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

#include "insider/synth.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "insider/error.h"
#include "insider/pipeline.h"
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

SynthSpec small_cliques() {
  SynthSpec s;
  s.n_users = 15;
  s.k_clusters = 3;
  s.cluster_size_min = 5;
  s.cluster_size_max = 5;
  s.subspace_min = 5;
  s.subspace_max = 5;
  s.n_attributes = 12;
  s.p_in = 1.0;
  s.p_out = 0.0;
  s.n_outliers = 0;
  return s;
}

TEST(SynthGraph, NoClustersMeansNoPositives) {
  SynthSpec s;
  s.n_users = 30;
  s.k_clusters = 0;
  s.n_outliers = 0;
  const auto g = generate_attributed_graph(s);
  EXPECT_TRUE(g.truth.empty());
  EXPECT_TRUE(g.planted.empty());
  EXPECT_EQ(g.graph.num_vertices(), 30);
}

TEST(SynthGraph, DeterministicForSeed) {
  SynthSpec s;
  const auto a = generate_attributed_graph(s);
  const auto b = generate_attributed_graph(s);
  EXPECT_EQ(a.graph.edges(), b.graph.edges());
  EXPECT_EQ(a.graph.attributes(), b.graph.attributes());
  EXPECT_EQ(a.truth, b.truth);
  s.rng_seed = 2;
  EXPECT_NE(generate_attributed_graph(s).graph.edges(), a.graph.edges());
}

TEST(SynthGraph, DefaultShape) {
  const auto g = generate_attributed_graph({});
  EXPECT_EQ(g.graph.num_vertices(), 200);
  EXPECT_EQ(g.graph.num_attributes(), 40);
  EXPECT_EQ(g.planted.size(), 8u);
  EXPECT_EQ(g.truth.size(), 10u);
  const auto& x = g.graph.attributes();
  EXPECT_EQ(x.minCoeff(), 0.0);
  EXPECT_EQ(x.maxCoeff(), 1.0);
  for (Eigen::Index a = 0; a < x.cols(); ++a) {
    EXPECT_EQ(x.col(a).minCoeff(), 0.0);
    EXPECT_EQ(x.col(a).maxCoeff(), 1.0);
  }
}

// Property: every planted group is a connected quasi-clique coherent on its
// subspace, and each outlier sits at least outlier_gap outside its host's
// interval on every host subspace attribute.
TEST(SynthGraph, PlantedInvariants) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SynthSpec s;
    s.rng_seed = seed;
    const auto g = generate_attributed_graph(s);
    const auto& x = g.graph.attributes();
    for (const auto& c : g.planted) {
      EXPECT_GE(quasi_clique_gamma(g.graph, c.members), kPlantedGamma);
      EXPECT_TRUE(is_connected_subgraph(g.graph, c.members));
      const auto sub = max_subspace(c.members, x, s.width);
      for (int a : c.subspace) EXPECT_TRUE(std::binary_search(sub.begin(), sub.end(), a));
    }
    for (const auto& [v, host] : g.outlier_hosts) {
      const auto& c = g.planted[static_cast<std::size_t>(host)];
      for (int a : c.subspace) {
        double lo = 1, hi = 0;
        for (VertexId m : c.members) {
          lo = std::min(lo, x(m, a));
          hi = std::max(hi, x(m, a));
        }
        EXPECT_TRUE(x(v, a) <= lo - s.outlier_gap + 1e-12 || x(v, a) >= hi + s.outlier_gap - 1e-12)
            << "seed " << seed << " outlier " << v << " attr " << a;
      }
      EXPECT_TRUE(g.truth.contains(g.graph.user(v)));
    }
  }
}

TEST(SynthGraph, ExactOracleRecoversPlantedCliques) {
  const auto g = generate_attributed_graph(small_cliques());
  ClusterParams p;
  p.oracle_bound = 15;
  const auto r = enumerate_clusters_exact(g.graph, p);
  std::vector<std::vector<int>> found, planted;
  for (const auto& c : r.clusters) found.push_back(c.members);
  for (const auto& c : g.planted) planted.push_back(c.members);
  std::sort(found.begin(), found.end());
  std::sort(planted.begin(), planted.end());
  EXPECT_EQ(found, planted);
}

TEST(SynthGraph, InfeasibleSpecIsConfigError) {
  SynthSpec s;
  s.p_in = 0.01;
  EXPECT_THROW(s.validate(), ConfigError);
  s = {};
  s.k_clusters = 24;  // 24 groups of at least 8 plus 10 outliers exceed 200 users
  EXPECT_THROW(generate_attributed_graph(s), ConfigError);
  s = {};
  s.outlier_gap = 0.6;
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(SynthGraph, WritesLoadableFiles) {
  const auto dir = testing::fresh_dir("synth_files");
  SynthSpec s = small_cliques();
  const auto g = generate_attributed_graph(s);
  write_synth_graph(g, dir);
  std::ifstream nodes(dir / "nodes.csv");
  std::ifstream edges(dir / "edges.csv");
  const auto back = load_graph(nodes, edges);
  EXPECT_EQ(back.edges(), g.graph.edges());
  EXPECT_EQ(read_ground_truth(dir / "ground_truth.txt"), g.truth);
}

SynthSpec tiny_logs() {
  SynthSpec s;
  s.n_users = 5;
  s.k_clusters = 1;
  s.cluster_size_min = 3;
  s.cluster_size_max = 3;
  s.subspace_min = 2;
  s.subspace_max = 2;
  s.n_attributes = 4;
  s.n_outliers = 0;
  s.n_days = 10;
  s.after_hours_users = {1};
  s.inactive_users = {4};
  return s;
}

AttributeTable features_of(const fs::path& logs, const fs::path& out) {
  PipelineConfig c;
  c.log_dir = logs;
  c.output_dir = out;
  run_stage(Stage::kIngest, c);
  run_stage(Stage::kFeatures, c);
  std::ifstream in(out / "attributes.csv");
  return read_attribute_csv(in);
}

TEST(SynthLogs, FeaturesReflectProfiles) {
  const auto dir = testing::fresh_dir("synth_logs");
  const auto logs = generate_logs(tiny_logs(), {}, dir / "corpus");
  EXPECT_EQ(logs.directory.size(), 5u);
  EXPECT_GT(logs.events, 0u);
  const auto t = features_of(dir / "corpus", dir / "out");
  ASSERT_EQ(t.users.size(), 5u);
  const auto col = [&](const std::string& name) {
    return std::find(t.names.begin(), t.names.end(), name) - t.names.begin();
  };
  // The inactive user still gets a row, with zero activity features.
  EXPECT_EQ(t.values(4, col("logon_daily_count_all_max")), 0.0);
  EXPECT_EQ(t.values(4, col("email_daily_sent_all_max")), 0.0);
  EXPECT_EQ(t.values(4, col("file_pcs")), 0.0);
  // The night owl logs on after hours more than anyone else.
  const auto ah = col("logon_daily_count_ah_avg");
  for (int v : {0, 2, 3}) EXPECT_GT(t.values(1, ah), t.values(v, ah));
}

TEST(SynthLogs, ByteIdenticalAcrossRuns) {
  const auto dir = testing::fresh_dir("synth_logs_repeat");
  generate_logs(tiny_logs(), {}, dir / "a");
  generate_logs(tiny_logs(), {}, dir / "b");
  for (const char* f : {"logon.csv", "device.csv", "email.csv", "file.csv", "ground_truth.txt"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
  EXPECT_GT(slurp(dir / "a" / "logon.csv").size(), 1000u);
}

TEST(SynthLogs, RefusesLargeCorpora) {
  const auto dir = testing::fresh_dir("synth_logs_big");
  SynthSpec s;
  s.n_users = 500;
  EXPECT_THROW(generate_logs(s, {}, dir), ConfigError);
  s = tiny_logs();
  s.n_days = 61;
  EXPECT_THROW(generate_logs(s, {}, dir), ConfigError);
}

}  // namespace
}  // namespace insider
