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

#ifndef INSIDER_GRAPH_H_
#define INSIDER_GRAPH_H_

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "insider/ingest.h"

namespace insider {

using VertexId = int;
using Edge = std::pair<VertexId, VertexId>;

// Undirected simple graph over users, with one attribute row per vertex.
// Immutable once built; safe to share across threads.
class AttributedGraph {
 public:
  AttributedGraph() = default;

  // Self-loops are dropped and duplicate / reversed pairs collapsed. Throws
  // DataError on out-of-range endpoints or when the attribute row count does
  // not match the vertex count.
  AttributedGraph(std::vector<std::string> users, const std::vector<Edge>& edges,
                  Eigen::MatrixXd attributes, std::vector<std::string> attribute_names);

  int num_vertices() const { return static_cast<int>(users_.size()); }
  std::int64_t num_edges() const { return num_edges_; }

  // Sorted ascending.
  std::span<const VertexId> neighbors(VertexId v) const {
    return {adjacency_[static_cast<std::size_t>(v)]};
  }
  int degree(VertexId v) const {
    return static_cast<int>(adjacency_[static_cast<std::size_t>(v)].size());
  }
  bool has_edge(VertexId u, VertexId v) const;

  const std::string& user(VertexId v) const { return users_[static_cast<std::size_t>(v)]; }
  const std::vector<std::string>& users() const { return users_; }
  std::optional<VertexId> index_of(std::string_view user) const;

  const Eigen::MatrixXd& attributes() const { return attributes_; }
  const std::vector<std::string>& attribute_names() const { return attribute_names_; }
  int num_attributes() const { return static_cast<int>(attributes_.cols()); }

  // Each undirected edge once, as (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;

  // Symmetric 0/1 adjacency matrix.
  Eigen::SparseMatrix<double> adjacency_matrix() const;

 private:
  std::vector<std::string> users_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<std::vector<VertexId>> adjacency_;
  // Row-major bit matrix for O(1) adjacency tests.
  std::vector<std::uint64_t> bits_;
  std::size_t words_per_row_ = 0;
  std::int64_t num_edges_ = 0;
  Eigen::MatrixXd attributes_;
  std::vector<std::string> attribute_names_;
};

struct GraphBuildOptions {
  std::string internal_domain = "dtaa.com";
};

struct GraphBuildResult {
  AttributedGraph graph;
  std::vector<Reject> rejects;
  std::int64_t hierarchy_edges = 0;
  std::int64_t email_edges = 0;
};

// One vertex per directory user (directory order). Edges: every
// supervisor/subordinate pair, plus sender/internal-recipient pairs from
// email (to, cc and bcc). External recipients add nothing. An email whose
// sender or internal recipient cannot be resolved contributes no edges and
// is reported as a reject. `attributes` rows must align with the directory.
GraphBuildResult build_graph(const OrgDirectory& directory,
                             const std::vector<LogEvent>& email_events,
                             Eigen::MatrixXd attributes,
                             std::vector<std::string> attribute_names,
                             const GraphBuildOptions& options = {});

struct DegreeProfile {
  Eigen::VectorXi degrees;
  int num_vertices = 0;
  std::int64_t num_edges = 0;
};

DegreeProfile degree_profile(const AttributedGraph& graph);

// edges.csv: header `src,dst`, user ids with src < dst, rows sorted.
void write_edges_csv(std::ostream& out, const AttributedGraph& graph);

// Rebuilds a graph from nodes.norm.csv and edges.csv contents.
AttributedGraph load_graph(std::istream& nodes, std::istream& edges);

}  // namespace insider

#endif  // INSIDER_GRAPH_H_
