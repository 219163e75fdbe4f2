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

// Independent reference implementations used only by tests. Each one is
// written from the definition, shares no code with the library beyond the
// AttributedGraph container, and favors obviousness over speed.

#ifndef INSIDER_TESTS_ORACLES_H_
#define INSIDER_TESTS_ORACLES_H_

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "insider/clusterer.h"
#include "insider/graph.h"

namespace insider::testing {

inline AttributedGraph make_graph(int n, const std::vector<Edge>& edges,
                                  Eigen::MatrixXd attributes = {}) {
  if (attributes.size() == 0) attributes = Eigen::MatrixXd::Zero(n, 1);
  std::vector<std::string> users;
  for (int i = 0; i < n; ++i) users.push_back("U" + std::to_string(100 + i));
  std::vector<std::string> names;
  for (Eigen::Index j = 0; j < attributes.cols(); ++j) names.push_back("a" + std::to_string(j));
  return AttributedGraph(users, edges, std::move(attributes), names);
}

inline std::vector<Edge> star_edges(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return e;
}

inline std::vector<Edge> path_edges(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

inline std::vector<Edge> cycle_edges(int n) {
  auto e = path_edges(n);
  e.emplace_back(n - 1, 0);
  return e;
}

inline std::vector<Edge> complete_edges(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return e;
}

inline std::vector<Edge> random_edges(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) e.emplace_back(i, j);
    }
  }
  return e;
}

// Betweenness by explicit enumeration of every shortest path between every
// unordered pair.
inline std::vector<double> brute_force_betweenness(const AttributedGraph& g) {
  const int n = g.num_vertices();
  std::vector<double> bc(static_cast<std::size_t>(n), 0.0);
  for (int s = 0; s < n; ++s) {
    // BFS distances from s.
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<int> queue = {s};
    dist[static_cast<std::size_t>(s)] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (int w : g.neighbors(queue[h])) {
        if (dist[static_cast<std::size_t>(w)] < 0) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(queue[h])] + 1;
          queue.push_back(w);
        }
      }
    }
    for (int t = s + 1; t < n; ++t) {
      if (dist[static_cast<std::size_t>(t)] < 0) continue;
      std::vector<std::vector<int>> paths;
      std::vector<int> current = {s};
      auto extend = [&](auto&& self, int v) -> void {
        if (v == t) {
          paths.push_back(current);
          return;
        }
        for (int w : g.neighbors(v)) {
          if (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(v)] + 1 &&
              dist[static_cast<std::size_t>(w)] <= dist[static_cast<std::size_t>(t)]) {
            current.push_back(w);
            self(self, w);
            current.pop_back();
          }
        }
      };
      extend(extend, s);
      for (const auto& path : paths) {
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
          bc[static_cast<std::size_t>(path[i])] += 1.0 / static_cast<double>(paths.size());
        }
      }
    }
  }
  return bc;
}

struct OracleCluster {
  int size = 0;
  int dims = 0;
  std::vector<int> members;
};

// score_k(v) straight from the printed formulas, centrality inside the sum.
inline std::array<double, 6> direct_scores(int v, const std::vector<OracleCluster>& clusters,
                                           double deg, double deg_max, double ec, double ec_max,
                                           double bc, double bc_max) {
  auto frac = [](double x, double m) { return m == 0 ? 0.0 : x / m; };
  double c_max = 0;
  double s_max = 0;
  for (const auto& c : clusters) {
    c_max = std::max(c_max, static_cast<double>(c.size));
    s_max = std::max(s_max, static_cast<double>(c.dims));
  }
  std::array<double, 6> sums{};
  for (const auto& c : clusters) {
    if (std::find(c.members.begin(), c.members.end(), v) == c.members.end()) continue;
    const double cs = frac(c.size, c_max) + frac(c.dims, s_max);
    const double d = frac(deg, deg_max);
    const double e = frac(ec, ec_max);
    const double b = frac(bc, bc_max);
    sums[0] += cs + d;
    sums[1] += cs + e;
    sums[2] += cs + b;
    sums[3] += cs + d + e;
    sums[4] += cs + d + b;
    sums[5] += cs + d + e + b;
  }
  return {sums[0] / 3, sums[1] / 3, sums[2] / 3, sums[3] / 4, sums[4] / 4, sums[5] / 5};
}

// Fraction of (positive, negative) pairs with the positive strictly lower,
// ties counting one half.
inline double pairwise_auc(const std::vector<double>& scores, const std::vector<bool>& labels) {
  double wins = 0;
  double pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      pairs += 1;
      if (scores[i] < scores[j]) wins += 1;
      if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

struct BruteCluster {
  std::vector<int> members;
  std::vector<int> subspace;
  double gamma = 0;
  double quality = 0;
};

// Every vertex subset checked against the constraints from their
// definitions, then pruned greedily by (quality, |C|, |S|, members).
inline std::vector<BruteCluster> brute_force_clusters(const AttributedGraph& g,
                                                      const ClusterParams& p) {
  const int n = g.num_vertices();
  const auto& x = g.attributes();
  std::vector<BruteCluster> all;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> c;
    for (int v = 0; v < n; ++v) {
      if (mask & (1u << v)) c.push_back(v);
    }
    const int k = static_cast<int>(c.size());
    if (k < p.n_min || k < 2) continue;
    int min_deg = k;
    for (int v : c) {
      int d = 0;
      for (int u : c) d += g.has_edge(u, v) ? 1 : 0;
      min_deg = std::min(min_deg, d);
    }
    const double gamma = static_cast<double>(min_deg) / (k - 1);
    if (gamma < p.gamma_min - 1e-12) continue;
    // Connectivity by flood fill.
    std::vector<int> seen = {c.front()};
    for (std::size_t h = 0; h < seen.size(); ++h) {
      for (int u : c) {
        if (g.has_edge(seen[h], u) && std::find(seen.begin(), seen.end(), u) == seen.end()) {
          seen.push_back(u);
        }
      }
    }
    if (static_cast<int>(seen.size()) != k) continue;
    std::vector<int> s;
    for (int a = 0; a < x.cols(); ++a) {
      double lo = x(c.front(), a);
      double hi = lo;
      for (int v : c) {
        lo = std::min(lo, x(v, a));
        hi = std::max(hi, x(v, a));
      }
      if (hi - lo <= p.w) s.push_back(a);
    }
    if (static_cast<int>(s.size()) < p.s_min) continue;
    const double q = std::pow(k, p.a_exp) * std::pow(static_cast<double>(s.size()), p.b_exp) *
                     std::pow(gamma, p.c_exp);
    all.push_back({c, s, gamma, q});
  }
  std::sort(all.begin(), all.end(), [](const BruteCluster& a, const BruteCluster& b) {
    if (a.quality != b.quality) return a.quality > b.quality;
    if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
    if (a.subspace.size() != b.subspace.size()) return a.subspace.size() > b.subspace.size();
    return a.members < b.members;
  });
  auto overlap = [](const std::vector<int>& a, const std::vector<int>& b) {
    int common = 0;
    for (int v : a) common += std::count(b.begin(), b.end(), v) > 0 ? 1 : 0;
    return static_cast<double>(common) / static_cast<double>(a.size());
  };
  std::vector<BruteCluster> kept;
  for (const auto& cand : all) {
    bool redundant = false;
    for (const auto& k : kept) {
      if (overlap(cand.members, k.members) >= p.r_obj &&
          overlap(cand.subspace, k.subspace) >= p.r_dim) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(cand);
  }
  return kept;
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("insider_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace insider::testing

#endif  // INSIDER_TESTS_ORACLES_H_
