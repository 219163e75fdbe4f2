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

#include "insider/centrality.h"

#include <Eigen/SparseCore>
#include <vector>

#include "insider/error.h"
#include "insider/parallel.h"
#include "insider/text.h"

namespace insider {
namespace {

// Brandes dependency accumulation for one source; adds pair dependencies
// into `delta_out` (each unordered pair counted from both endpoints).
void single_source_dependencies(const AttributedGraph& graph, VertexId source,
                                Eigen::VectorXd& delta_out) {
  const int n = graph.num_vertices();
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::vector<double> sigma(static_cast<std::size_t>(n), 0.0);
  std::vector<double> delta(static_cast<std::size_t>(n), 0.0);
  std::vector<VertexId> order;
  order.reserve(static_cast<std::size_t>(n));

  dist[static_cast<std::size_t>(source)] = 0;
  sigma[static_cast<std::size_t>(source)] = 1.0;
  order.push_back(source);
  for (std::size_t head = 0; head < order.size(); ++head) {
    const VertexId v = order[head];
    for (VertexId w : graph.neighbors(v)) {
      auto& dw = dist[static_cast<std::size_t>(w)];
      if (dw < 0) {
        dw = dist[static_cast<std::size_t>(v)] + 1;
        order.push_back(w);
      }
      if (dw == dist[static_cast<std::size_t>(v)] + 1) {
        sigma[static_cast<std::size_t>(w)] += sigma[static_cast<std::size_t>(v)];
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const VertexId w = *it;
    for (VertexId v : graph.neighbors(w)) {
      if (dist[static_cast<std::size_t>(v)] == dist[static_cast<std::size_t>(w)] - 1) {
        delta[static_cast<std::size_t>(v)] +=
            sigma[static_cast<std::size_t>(v)] / sigma[static_cast<std::size_t>(w)] *
            (1.0 + delta[static_cast<std::size_t>(w)]);
      }
    }
  }
  delta[static_cast<std::size_t>(source)] = 0.0;
  for (int v = 0; v < n; ++v) delta_out(v) = delta[static_cast<std::size_t>(v)];
}

}  // namespace

Eigen::VectorXd degree_centrality(const AttributedGraph& graph) {
  Eigen::VectorXd d(graph.num_vertices());
  for (VertexId v = 0; v < graph.num_vertices(); ++v) d(v) = graph.degree(v);
  return d;
}

EigenvectorResult eigenvector_centrality(const AttributedGraph& graph, double tol,
                                         int max_iter) {
  const int n = graph.num_vertices();
  if (n == 0) throw DataError("eigenvector centrality of an empty graph");
  EigenvectorResult result;
  result.values = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd active(n);
  for (VertexId v = 0; v < n; ++v) active(v) = graph.degree(v) > 0 ? 1.0 : 0.0;
  if (active.sum() == 0) return result;

  const Eigen::SparseMatrix<double> a = graph.adjacency_matrix();
  Eigen::VectorXd x = active;
  double residual = 0;
  for (int it = 1; it <= max_iter; ++it) {
    Eigen::VectorXd next = a * x + x;
    const double scale = next.maxCoeff();
    next /= scale;
    residual = (next - x).cwiseAbs().maxCoeff();
    x = std::move(next);
    if (residual < tol) {
      x = x.cwiseProduct(active);
      result.values = x;
      result.eigenvalue = (a * x).maxCoeff() / x.maxCoeff();
      result.iterations = it;
      return result;
    }
  }
  throw ConvergenceError("eigenvector centrality did not converge in " +
                             std::to_string(max_iter) + " iterations (residual " +
                             format_double(residual) + ")",
                         residual);
}

Eigen::VectorXd betweenness_centrality(const AttributedGraph& graph, int threads) {
  const int n = graph.num_vertices();
  Eigen::VectorXd total = Eigen::VectorXd::Zero(n);
  constexpr int kBlock = 64;
  Eigen::MatrixXd block(n, kBlock);
  for (int start = 0; start < n; start += kBlock) {
    const int count = std::min(kBlock, n - start);
    parallel_for(static_cast<std::size_t>(count), threads, [&](std::size_t i) {
      Eigen::VectorXd col(n);
      single_source_dependencies(graph, start + static_cast<int>(i), col);
      block.col(static_cast<Eigen::Index>(i)) = col;
    });
    for (int i = 0; i < count; ++i) total += block.col(i);
  }
  return total / 2.0;
}

CentralityTable compute_centralities(const AttributedGraph& graph, double tol, int max_iter,
                                     int threads) {
  CentralityTable t;
  t.degree = degree_centrality(graph);
  auto ec = eigenvector_centrality(graph, tol, max_iter);
  t.eigenvector = std::move(ec.values);
  t.eigenvalue = ec.eigenvalue;
  t.betweenness = betweenness_centrality(graph, threads);
  if (graph.num_vertices() > 0) {
    t.deg_max = t.degree.maxCoeff();
    t.ec_max = t.eigenvector.maxCoeff();
    t.bc_max = t.betweenness.maxCoeff();
  }
  return t;
}

void write_centrality_csv(std::ostream& out, const AttributedGraph& graph,
                          const CentralityTable& table) {
  out << "user_id,degree,eigenvector,betweenness\n";
  for (VertexId v = 0; v < graph.num_vertices(); ++v) {
    out << escape_csv_field(graph.user(v)) << ',' << format_double(table.degree(v)) << ','
        << format_double(table.eigenvector(v)) << ',' << format_double(table.betweenness(v))
        << '\n';
  }
}

}  // namespace insider
