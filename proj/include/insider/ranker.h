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

// Outlier scores over a twofold clustering.
//
// For a vertex v and each cluster (C, S) containing it, let
//
//   A = |C|/c_max + |S|/s_max + deg(v)/deg_max
//
// Then, summing over the containing clusters,
//
//   score_1 = 1/3 * sum(A)
//   score_2 = 1/3 * sum(|C|/c_max + |S|/s_max + EC(v)/EC_max)
//   score_3 = 1/3 * sum(|C|/c_max + |S|/s_max + BC(v)/BC_max)
//   score_4 = 1/4 * sum(A + EC(v)/EC_max)
//   score_5 = 1/4 * sum(A + BC(v)/BC_max)
//   score_6 = 1/5 * sum(A + EC(v)/EC_max + BC(v)/BC_max)
//
// The centrality terms sit inside the sum, so they are counted once per
// containing cluster. With `centrality_outside_sum` they are added once per
// vertex instead (only for vertices in at least one cluster). Any 0/0
// normalized term is 0. Low scores mark outliers.

#ifndef INSIDER_RANKER_H_
#define INSIDER_RANKER_H_

#include <Eigen/Core>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "insider/centrality.h"
#include "insider/clusterer.h"
#include "insider/graph.h"

namespace insider {

inline constexpr int kScoreVariants = 6;

struct NormalizationContext {
  double c_max = 0;
  double s_max = 0;
  double deg_max = 0;
  double ec_max = 0;
  double bc_max = 0;
};

struct ScoreOptions {
  bool centrality_outside_sum = false;
};

struct OutlierScoreTable {
  std::vector<std::string> users;
  Eigen::Matrix<double, Eigen::Dynamic, kScoreVariants> scores;  // column k = score_{k+1}
  Eigen::VectorXi memberships;
  // ranks(v, k) is the 1-based position of v in rank_users(table, k + 1).
  Eigen::Matrix<int, Eigen::Dynamic, kScoreVariants> ranks;
};

// x / max with 0/0 (and any non-positive max) mapped to 0.
inline double normalized(double x, double max) { return max > 0 ? x / max : 0.0; }

// Throws DataError when the centrality table or any cluster member does
// not match the graph's vertex set.
OutlierScoreTable compute_scores(const ClusteringResult& result,
                                 const CentralityTable& centralities,
                                 const AttributedGraph& graph, const ScoreOptions& options = {});

// Vertex indices, most suspicious first: ascending score, then fewer
// memberships, then user id. `variant` is 1..6.
std::vector<int> rank_users(const OutlierScoreTable& table, int variant);

// scores.csv: user_id,score_1,...,score_6,memberships
void write_scores_csv(std::ostream& out, const OutlierScoreTable& table);
// Inverse of write_scores_csv (ranks recomputed). Throws SchemaError.
OutlierScoreTable read_scores_csv(std::istream& in);
// ranking.<variant>.csv: rank,user_id,score
void write_ranking_csv(std::ostream& out, const OutlierScoreTable& table, int variant);

}  // namespace insider

#endif  // INSIDER_RANKER_H_
