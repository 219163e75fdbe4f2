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

#ifndef INSIDER_CENTRALITY_H_
#define INSIDER_CENTRALITY_H_

#include <Eigen/Core>
#include <ostream>

#include "insider/graph.h"

namespace insider {

struct CentralityTable {
  Eigen::VectorXd degree;
  Eigen::VectorXd eigenvector;
  Eigen::VectorXd betweenness;
  double deg_max = 0;
  double ec_max = 0;
  double bc_max = 0;
  // Dominant adjacency eigenvalue reported by the power iteration.
  double eigenvalue = 0;
};

Eigen::VectorXd degree_centrality(const AttributedGraph& graph);

struct EigenvectorResult {
  Eigen::VectorXd values;  // max-normalized, isolated vertices 0
  double eigenvalue = 0;
  int iterations = 0;
};

// Power iteration on A + I (same eigenvectors as A; the shift makes the
// dominant eigenvalue strictly dominant on bipartite graphs such as stars).
// Starts from the uniform vector on non-isolated vertices and stops when
// successive max-normalized iterates differ by less than `tol` in max-norm.
// On a disconnected graph the component with the largest eigenvalue
// dominates. Throws ConvergenceError after `max_iter` iterations.
EigenvectorResult eigenvector_centrality(const AttributedGraph& graph, double tol = 1e-10,
                                         int max_iter = 10000);

// Exact shortest-path betweenness over unordered pairs, endpoints excluded,
// not normalized. One BFS and dependency accumulation per source; sources
// are processed in blocks whose contributions are summed in source order,
// so the result is identical for any thread count.
Eigen::VectorXd betweenness_centrality(const AttributedGraph& graph, int threads = 1);

CentralityTable compute_centralities(const AttributedGraph& graph, double tol = 1e-10,
                                     int max_iter = 10000, int threads = 1);

// centrality.csv: user_id,degree,eigenvector,betweenness
void write_centrality_csv(std::ostream& out, const AttributedGraph& graph,
                          const CentralityTable& table);

}  // namespace insider

#endif  // INSIDER_CENTRALITY_H_
