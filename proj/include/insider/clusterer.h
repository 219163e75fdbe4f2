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

// Twofold (subgraph + subspace) clustering of attributed graphs.
//
// A twofold cluster (C, S) is a vertex set C that is a connected
// gamma-quasi-clique (every member adjacent to at least
// ceil(gamma_min * (|C| - 1)) other members) together with the maximal
// attribute subspace S in which all members lie within a normalized width w.
// Clusters are scored by
//
//   Q(C, S) = |C|^a * |S|^b * gamma(C)^c
//
// and a result set is kept free of redundancy: a cluster is dropped when a
// better one shares at least r_obj of its members and r_dim of its
// dimensions.
//
// Two solvers share these definitions: an exhaustive enumerator for small
// graphs (used as an oracle) and a GRASP search for full-size graphs.

#ifndef INSIDER_CLUSTERER_H_
#define INSIDER_CLUSTERER_H_

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "insider/graph.h"

namespace insider {

struct ClusterParams {
  int n_min = 3;
  int s_min = 2;
  double gamma_min = 0.5;
  double w = 0.1;
  double a_exp = 1.0;
  double b_exp = 1.0;
  double c_exp = 1.0;
  double r_obj = 0.1;
  double r_dim = 0.1;
  std::uint64_t rng_seed = 0;
  int grasp_iterations = 2000;
  double rcl_alpha = 0.3;
  // Largest graph the exact enumerator accepts.
  int oracle_bound = 14;

  // Throws ConfigError when a field is out of range.
  void validate() const;
};

struct TwofoldCluster {
  std::vector<VertexId> members;  // sorted
  std::vector<int> subspace;      // sorted attribute indices
  double gamma = 0;
  double quality = 0;

  bool operator==(const TwofoldCluster&) const = default;
};

struct ClusteringResult {
  std::vector<TwofoldCluster> clusters;
  int c_max = 0;
  int s_max = 0;
  ClusterParams params;

  double total_quality() const;
};

// min over v in C of (neighbours of v inside C) / (|C| - 1). Throws
// DataError for |C| < 2.
double quasi_clique_gamma(const AttributedGraph& graph, std::span<const VertexId> members);

// Attributes whose value range over `members` is at most w.
std::vector<int> max_subspace(std::span<const VertexId> members,
                              const Eigen::MatrixXd& attributes, double w);

template <typename Scalar>
Scalar cluster_quality(Scalar size, Scalar dims, Scalar gamma, const ClusterParams& p) {
  using std::pow;
  return pow(size, Scalar(p.a_exp)) * pow(dims, Scalar(p.b_exp)) *
         pow(gamma, Scalar(p.c_exp));
}

// Smallest in-cluster degree every member of a size-n cluster must reach.
int required_degree(int cluster_size, double gamma_min);

bool is_connected_subgraph(const AttributedGraph& graph, std::span<const VertexId> members);

// Builds (C, max_subspace(C)) with gamma and quality filled in, or returns
// an empty optional when any constraint fails.
std::optional<TwofoldCluster> make_cluster(const AttributedGraph& graph,
                                           std::vector<VertexId> members,
                                           const ClusterParams& params);

// Checks size, dimensionality, quasi-clique density, connectivity and width.
bool satisfies_constraints(const AttributedGraph& graph, const TwofoldCluster& cluster,
                           const ClusterParams& params);

// True when `lower` is redundant given the (better) cluster `upper`.
bool is_redundant(const TwofoldCluster& lower, const TwofoldCluster& upper,
                  double r_obj, double r_dim);

// Orders by quality desc, then |C| desc, |S| desc, members lexicographic,
// then admits each candidate not redundant to an admitted one.
std::vector<TwofoldCluster> prune_redundant(std::vector<TwofoldCluster> candidates,
                                            double r_obj, double r_dim);

// Exhaustive search over every vertex subset. Throws OracleBoundError when
// the graph has more than params.oracle_bound vertices.
ClusteringResult enumerate_clusters_exact(const AttributedGraph& graph,
                                          const ClusterParams& params);

// GRASP: randomized greedy construction from an attribute-biased seed edge,
// then add/remove/swap hill climbing; the pool of local optima is pruned.
// Iteration i draws from its own RNG stream derived from (rng_seed, i), so
// the result does not depend on `threads`.
ClusteringResult grasp_cluster(const AttributedGraph& graph, const ClusterParams& params,
                               int threads = 1);

// Fills c_max / s_max from the clusters.
ClusteringResult make_result(std::vector<TwofoldCluster> clusters, const ClusterParams& params);

// JSON lines: params header, then one object per cluster with user ids and
// attribute names.
void write_clusters_jsonl(std::ostream& out, const ClusteringResult& result,
                          const AttributedGraph& graph);
ClusteringResult read_clusters_jsonl(std::istream& in, const AttributedGraph& graph);

}  // namespace insider

#endif  // INSIDER_CLUSTERER_H_
