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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <random>
#include <sstream>

#include "oracles.h"

namespace insider {
namespace {

using testing::make_graph;

TEST(Degree, Star) {
  const auto g = make_graph(5, testing::star_edges(4));
  const auto d = degree_centrality(g);
  EXPECT_EQ(d(0), 4.0);
  for (int i = 1; i < 5; ++i) EXPECT_EQ(d(i), 1.0);
}

TEST(Eigenvector, StarMatchesDenseSolver) {
  const auto g = make_graph(5, testing::star_edges(4));
  const auto ec = eigenvector_centrality(g);
  EXPECT_NEAR(ec.values(0), 1.0, 1e-9);
  for (int i = 1; i < 5; ++i) EXPECT_NEAR(ec.values(i), 0.5, 1e-9);
  EXPECT_NEAR(ec.eigenvalue, 2.0, 1e-8);
}

TEST(Eigenvector, CompleteGraphIsUniform) {
  for (int n : {2, 5, 17}) {
    const auto ec = eigenvector_centrality(make_graph(n, testing::complete_edges(n)));
    for (int i = 0; i < n; ++i) EXPECT_NEAR(ec.values(i), 1.0, 1e-8);
    EXPECT_NEAR(ec.eigenvalue, n - 1, 1e-8);
  }
}

TEST(Eigenvector, IsolatedVertexIsZero) {
  const auto ec = eigenvector_centrality(make_graph(3, {{0, 1}}));
  EXPECT_NEAR(ec.values(0), 1.0, 1e-12);
  EXPECT_NEAR(ec.values(1), 1.0, 1e-12);
  EXPECT_EQ(ec.values(2), 0.0);
}

TEST(Eigenvector, EmptyGraphIsAllZero) {
  const auto ec = eigenvector_centrality(make_graph(4, {}));
  EXPECT_TRUE(ec.values.isZero());
}

// Property: on connected random graphs the result satisfies A x = lambda x
// and agrees with a dense symmetric eigensolver.
TEST(Eigenvector, AgreesWithDenseSolverOnRandomGraphs) {
  std::mt19937_64 rng(21);
  int checked = 0;
  while (checked < 30) {
    const int n = 3 + static_cast<int>(rng() % 25);
    const auto g = make_graph(n, testing::random_edges(n, 0.35, rng));
    bool connected = true;
    {
      std::vector<int> seen = {0};
      std::vector<bool> mark(static_cast<std::size_t>(n), false);
      mark[0] = true;
      for (std::size_t h = 0; h < seen.size(); ++h) {
        for (int w : g.neighbors(seen[h])) {
          if (!mark[static_cast<std::size_t>(w)]) {
            mark[static_cast<std::size_t>(w)] = true;
            seen.push_back(w);
          }
        }
      }
      connected = static_cast<int>(seen.size()) == n;
    }
    if (!connected) continue;
    ++checked;
    const Eigen::MatrixXd a = Eigen::MatrixXd(g.adjacency_matrix());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    Eigen::VectorXd ref = solver.eigenvectors().col(n - 1).cwiseAbs();
    ref /= ref.maxCoeff();
    const auto ec = eigenvector_centrality(g, 1e-13, 200000);
    EXPECT_NEAR(ec.eigenvalue, solver.eigenvalues()(n - 1), 1e-8);
    EXPECT_LT((ec.values - ref).cwiseAbs().maxCoeff(), 1e-7);
    EXPECT_LT((a * ec.values - ec.eigenvalue * ec.values).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(Betweenness, StarCenterIsPairsOfLeaves) {
  const auto bc = betweenness_centrality(make_graph(5, testing::star_edges(4)));
  EXPECT_EQ(bc(0), 6.0);
  for (int i = 1; i < 5; ++i) EXPECT_EQ(bc(i), 0.0);
}

TEST(Betweenness, PathClosedForm) {
  for (int n : {2, 3, 7, 20}) {
    const auto bc = betweenness_centrality(make_graph(n, testing::path_edges(n)));
    for (int i = 0; i < n; ++i) EXPECT_EQ(bc(i), static_cast<double>(i) * (n - 1 - i));
  }
}

TEST(Betweenness, CompleteGraphIsZero) {
  EXPECT_TRUE(betweenness_centrality(make_graph(6, testing::complete_edges(6))).isZero());
}

TEST(Betweenness, FourCycleSplitsPaths) {
  const auto bc = betweenness_centrality(make_graph(4, testing::cycle_edges(4)));
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(bc(i), 0.5);
}

TEST(Betweenness, MatchesPathEnumeration) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const auto g = make_graph(n, testing::random_edges(n, 0.4, rng));
    const auto bc = betweenness_centrality(g);
    const auto ref = testing::brute_force_betweenness(g);
    for (int v = 0; v < n; ++v) EXPECT_NEAR(bc(v), ref[static_cast<std::size_t>(v)], 1e-9);
  }
}

// Threads only partition the sources; the reduction order is fixed.
TEST(Betweenness, ThreadCountDoesNotChangeBits) {
  std::mt19937_64 rng(4);
  const auto g = make_graph(120, testing::random_edges(120, 0.05, rng));
  const auto one = betweenness_centrality(g, 1);
  for (int t : {2, 3, 8}) EXPECT_EQ(betweenness_centrality(g, t), one);
}

TEST(Centralities, TableMaxima) {
  const auto t = compute_centralities(make_graph(5, testing::path_edges(5)));
  EXPECT_EQ(t.deg_max, 2.0);
  EXPECT_EQ(t.bc_max, 4.0);
  EXPECT_NEAR(t.ec_max, 1.0, 1e-12);
  std::ostringstream out;
  write_centrality_csv(out, make_graph(5, testing::path_edges(5)), t);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "user_id,degree,eigenvector,betweenness");
}

}  // namespace
}  // namespace insider
