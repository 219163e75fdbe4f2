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

#include "insider/clusterer.h"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "insider/error.h"
#include "insider/parallel.h"

namespace insider {
namespace {

std::size_t intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

bool better(const TwofoldCluster& x, const TwofoldCluster& y) {
  if (x.quality != y.quality) return x.quality > y.quality;
  if (x.members.size() != y.members.size()) return x.members.size() > y.members.size();
  if (x.subspace.size() != y.subspace.size()) return x.subspace.size() > y.subspace.size();
  if (x.members != y.members) return x.members < y.members;
  return x.subspace < y.subspace;
}

// Incremental view of one cluster under construction: member list,
// neighbour counts into the cluster for every vertex, and per-attribute
// min/max over the members.
class ClusterState {
 public:
  ClusterState(const AttributedGraph& graph, const ClusterParams& params)
      : graph_(graph),
        params_(params),
        attrs_(graph.attributes()),
        in_cluster_(static_cast<std::size_t>(graph.num_vertices()), 0),
        links_(static_cast<std::size_t>(graph.num_vertices()), 0),
        lo_(attrs_.cols()),
        hi_(attrs_.cols()) {}

  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<VertexId>& members() const { return members_; }
  bool contains(VertexId v) const { return in_cluster_[static_cast<std::size_t>(v)] != 0; }
  int links(VertexId v) const { return links_[static_cast<std::size_t>(v)]; }

  void add(VertexId v) {
    const auto row = attrs_.row(v);
    if (members_.empty()) {
      lo_ = row.transpose();
      hi_ = row.transpose();
    } else {
      lo_ = lo_.cwiseMin(row.transpose());
      hi_ = hi_.cwiseMax(row.transpose());
    }
    members_.push_back(v);
    in_cluster_[static_cast<std::size_t>(v)] = 1;
    for (VertexId u : graph_.neighbors(v)) ++links_[static_cast<std::size_t>(u)];
  }

  void remove(VertexId v) {
    members_.erase(std::find(members_.begin(), members_.end(), v));
    in_cluster_[static_cast<std::size_t>(v)] = 0;
    for (VertexId u : graph_.neighbors(v)) --links_[static_cast<std::size_t>(u)];
    recompute_bounds();
  }

  int dims() const { return dims_within(lo_, hi_); }

  int min_links() const {
    int m = std::numeric_limits<int>::max();
    for (VertexId v : members_) m = std::min(m, links(v));
    return m;
  }

  double gamma() const {
    if (size() < 2) return 0.0;
    return static_cast<double>(min_links()) / (size() - 1);
  }

  double quality() const {
    return cluster_quality<double>(size(), dims(), gamma(), params_);
  }

  bool valid() const {
    return size() >= params_.n_min && dims() >= params_.s_min &&
           min_links() >= required_degree(size(), params_.gamma_min) && connected();
  }

  bool connected() const { return is_connected_subgraph(graph_, members_); }

  // Dimensions kept after adding x.
  int dims_with(VertexId x) const {
    const auto row = attrs_.row(x);
    int count = 0;
    for (Eigen::Index a = 0; a < lo_.size(); ++a) {
      const double lo = std::min(lo_(a), row(a));
      const double hi = std::max(hi_(a), row(a));
      if (hi - lo <= params_.w) ++count;
    }
    return count;
  }

  // Minimum in-cluster degree after adding x.
  int min_links_with(VertexId x) const {
    int m = links(x);
    for (VertexId v : members_) {
      m = std::min(m, links(v) + (graph_.has_edge(v, x) ? 1 : 0));
    }
    return m;
  }

  // Bounds over members excluding position i, for every i.
  void leave_one_out(Eigen::MatrixXd& lo, Eigen::MatrixXd& hi) const {
    const Eigen::Index n = size();
    const Eigen::Index d = lo_.size();
    lo.resize(d, n);
    hi.resize(d, n);
    const double inf = std::numeric_limits<double>::infinity();
    Eigen::VectorXd run_lo = Eigen::VectorXd::Constant(d, inf);
    Eigen::VectorXd run_hi = Eigen::VectorXd::Constant(d, -inf);
    for (Eigen::Index i = 0; i < n; ++i) {
      lo.col(i) = run_lo;
      hi.col(i) = run_hi;
      run_lo = run_lo.cwiseMin(attrs_.row(members_[static_cast<std::size_t>(i)]).transpose());
      run_hi = run_hi.cwiseMax(attrs_.row(members_[static_cast<std::size_t>(i)]).transpose());
    }
    run_lo.setConstant(inf);
    run_hi.setConstant(-inf);
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      lo.col(i) = lo.col(i).cwiseMin(run_lo);
      hi.col(i) = hi.col(i).cwiseMax(run_hi);
      run_lo = run_lo.cwiseMin(attrs_.row(members_[static_cast<std::size_t>(i)]).transpose());
      run_hi = run_hi.cwiseMax(attrs_.row(members_[static_cast<std::size_t>(i)]).transpose());
    }
  }

  int dims_within(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) const {
    return static_cast<int>(((hi - lo).array() <= params_.w).count());
  }

  // Dimensions for bounds (lo, hi) widened by vertex x.
  int dims_within_plus(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                       VertexId x) const {
    const auto row = attrs_.row(x);
    int count = 0;
    for (Eigen::Index a = 0; a < lo.size(); ++a) {
      const double l = std::min(lo(a), row(a));
      const double h = std::max(hi(a), row(a));
      if (h - l <= params_.w) ++count;
    }
    return count;
  }

  TwofoldCluster snapshot() const {
    TwofoldCluster c;
    c.members = members_;
    std::sort(c.members.begin(), c.members.end());
    for (Eigen::Index a = 0; a < lo_.size(); ++a) {
      if (hi_(a) - lo_(a) <= params_.w) c.subspace.push_back(static_cast<int>(a));
    }
    c.gamma = gamma();
    c.quality = cluster_quality<double>(static_cast<double>(c.members.size()),
                                        static_cast<double>(c.subspace.size()), c.gamma,
                                        params_);
    return c;
  }

 private:
  void recompute_bounds() {
    if (members_.empty()) return;
    lo_ = attrs_.row(members_.front()).transpose();
    hi_ = lo_;
    for (VertexId v : members_) {
      lo_ = lo_.cwiseMin(attrs_.row(v).transpose());
      hi_ = hi_.cwiseMax(attrs_.row(v).transpose());
    }
  }

  const AttributedGraph& graph_;
  const ClusterParams& params_;
  const Eigen::MatrixXd& attrs_;
  std::vector<VertexId> members_;
  std::vector<char> in_cluster_;
  std::vector<int> links_;
  Eigen::VectorXd lo_;
  Eigen::VectorXd hi_;
};

enum class MoveKind { kNone, kAdd, kRemove, kSwap };

struct Move {
  MoveKind kind = MoveKind::kNone;
  VertexId in = -1;
  VertexId out = -1;
  double quality = 0;
};

class GraspSearch {
 public:
  GraspSearch(const AttributedGraph& graph, const ClusterParams& params,
              const std::vector<Edge>& seeds, const std::vector<std::uint64_t>& cumulative)
      : graph_(graph), params_(params), seeds_(seeds), cumulative_(cumulative) {}

  // The constructed cluster and its local optimum, when valid. Keeping
  // both lets small clusters survive even when hill climbing carries the
  // search into a neighbouring, larger one.
  std::vector<TwofoldCluster> run(std::uint64_t iteration) const {
    auto rng = substream(params_.rng_seed, iteration);
    const std::uint64_t r = uniform_below(rng, cumulative_.back());
    const auto pick = static_cast<std::size_t>(
        std::upper_bound(cumulative_.begin(), cumulative_.end(), r) - cumulative_.begin());
    const auto [u, v] = seeds_[pick];

    ClusterState state(graph_, params_);
    state.add(u);
    state.add(v);
    construct(state, rng);
    if (!state.valid()) return {};
    std::vector<TwofoldCluster> found = {state.snapshot()};
    local_search(state);
    auto improved = state.snapshot();
    if (improved.members != found.front().members) found.push_back(std::move(improved));
    return found;
  }

 private:
  std::vector<VertexId> frontier(const ClusterState& state) const {
    std::vector<VertexId> out;
    for (VertexId x = 0; x < graph_.num_vertices(); ++x) {
      if (!state.contains(x) && state.links(x) > 0) out.push_back(x);
    }
    return out;
  }

  void construct(ClusterState& state, std::mt19937_64& rng) const {
    struct Candidate {
      VertexId vertex;
      double quality;
    };
    std::vector<Candidate> feasible;
    while (true) {
      feasible.clear();
      const int next_size = state.size() + 1;
      const int need = required_degree(next_size, params_.gamma_min);
      for (VertexId x : frontier(state)) {
        const int links = state.min_links_with(x);
        if (links < need) continue;
        const int dims = state.dims_with(x);
        if (dims < params_.s_min) continue;
        const double gamma = static_cast<double>(links) / (next_size - 1);
        feasible.push_back({x, cluster_quality<double>(next_size, dims, gamma, params_)});
      }
      if (feasible.empty()) return;
      double best = -std::numeric_limits<double>::infinity();
      double worst = std::numeric_limits<double>::infinity();
      for (const auto& c : feasible) {
        best = std::max(best, c.quality);
        worst = std::min(worst, c.quality);
      }
      if (state.size() >= params_.n_min && best < state.quality()) return;
      const double cutoff = best - params_.rcl_alpha * (best - worst);
      std::vector<VertexId> rcl;
      for (const auto& c : feasible) {
        if (c.quality >= cutoff) rcl.push_back(c.vertex);
      }
      state.add(rcl[uniform_below(rng, rcl.size())]);
    }
  }

  // Best-improvement hill climbing over add / remove / swap moves. Only
  // moves that keep every constraint are considered.
  void local_search(ClusterState& state) const {
    Eigen::MatrixXd lo_without, hi_without;
    while (true) {
      const double current = state.quality();
      Move best;
      best.quality = current;
      auto consider = [&](const Move& m, auto&& check_connected) {
        if (m.quality <= best.quality) return;
        if (params_.gamma_min < 0.5 && !check_connected()) return;
        best = m;
      };

      const int n = state.size();
      const auto& members = state.members();
      const std::vector<VertexId> outside = frontier(state);

      // add
      {
        const int need = required_degree(n + 1, params_.gamma_min);
        for (VertexId x : outside) {
          const int links = state.min_links_with(x);
          if (links < need) continue;
          const int dims = state.dims_with(x);
          if (dims < params_.s_min) continue;
          const double q = cluster_quality<double>(
              n + 1, dims, static_cast<double>(links) / n, params_);
          // Adding a vertex adjacent to a connected set keeps it connected.
          consider({MoveKind::kAdd, x, -1, q}, [] { return true; });
        }
      }

      state.leave_one_out(lo_without, hi_without);

      // remove
      if (n - 1 >= params_.n_min && n - 1 >= 2) {
        const int need = required_degree(n - 1, params_.gamma_min);
        for (int i = 0; i < n; ++i) {
          const VertexId y = members[static_cast<std::size_t>(i)];
          int links = std::numeric_limits<int>::max();
          for (VertexId m : members) {
            if (m != y) links = std::min(links, state.links(m) - (graph_.has_edge(m, y) ? 1 : 0));
          }
          if (links < need) continue;
          const int dims = state.dims_within(lo_without.col(i), hi_without.col(i));
          if (dims < params_.s_min) continue;
          const double q = cluster_quality<double>(
              n - 1, dims, static_cast<double>(links) / (n - 2), params_);
          consider({MoveKind::kRemove, -1, y, q}, [&] {
            std::vector<VertexId> rest;
            for (VertexId m : members) {
              if (m != y) rest.push_back(m);
            }
            return is_connected_subgraph(graph_, rest);
          });
        }
      }

      // swap
      {
        const int need = required_degree(n, params_.gamma_min);
        for (int i = 0; i < n; ++i) {
          const VertexId y = members[static_cast<std::size_t>(i)];
          const Eigen::VectorXd lo = lo_without.col(i);
          const Eigen::VectorXd hi = hi_without.col(i);
          for (VertexId x : outside) {
            const int x_links = state.links(x) - (graph_.has_edge(x, y) ? 1 : 0);
            if (x_links < std::max(need, 1)) continue;
            int links = x_links;
            for (VertexId m : members) {
              if (m == y) continue;
              links = std::min(links, state.links(m) - (graph_.has_edge(m, y) ? 1 : 0) +
                                          (graph_.has_edge(m, x) ? 1 : 0));
              if (links < need) break;
            }
            if (links < need) continue;
            const int dims = state.dims_within_plus(lo, hi, x);
            if (dims < params_.s_min) continue;
            const double q = cluster_quality<double>(
                n, dims, static_cast<double>(links) / (n - 1), params_);
            consider({MoveKind::kSwap, x, y, q}, [&] {
              std::vector<VertexId> next;
              for (VertexId m : members) {
                if (m != y) next.push_back(m);
              }
              next.push_back(x);
              return is_connected_subgraph(graph_, next);
            });
          }
        }
      }

      switch (best.kind) {
        case MoveKind::kNone: return;
        case MoveKind::kAdd: state.add(best.in); break;
        case MoveKind::kRemove: state.remove(best.out); break;
        case MoveKind::kSwap:
          state.remove(best.out);
          state.add(best.in);
          break;
      }
    }
  }

  const AttributedGraph& graph_;
  const ClusterParams& params_;
  const std::vector<Edge>& seeds_;
  const std::vector<std::uint64_t>& cumulative_;
};

}  // namespace

void ClusterParams::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("invalid cluster parameter: " + what); };
  if (n_min < 2) fail("n_min must be >= 2");
  if (s_min < 1) fail("s_min must be >= 1");
  if (!(gamma_min > 0.0 && gamma_min <= 1.0)) fail("gamma_min must be in (0, 1]");
  if (!(w >= 0.0)) fail("w must be >= 0");
  if (!(a_exp >= 0.0 && b_exp >= 0.0 && c_exp >= 0.0)) fail("quality exponents must be >= 0");
  if (!(r_obj >= 0.0 && r_obj <= 1.0)) fail("r_obj must be in [0, 1]");
  if (!(r_dim >= 0.0 && r_dim <= 1.0)) fail("r_dim must be in [0, 1]");
  if (grasp_iterations < 0) fail("grasp_iterations must be >= 0");
  if (!(rcl_alpha >= 0.0 && rcl_alpha <= 1.0)) fail("rcl_alpha must be in [0, 1]");
  if (oracle_bound < 0 || oracle_bound > 24) fail("oracle_bound must be in [0, 24]");
}

double ClusteringResult::total_quality() const {
  double total = 0;
  for (const auto& c : clusters) total += c.quality;
  return total;
}

int required_degree(int cluster_size, double gamma_min) {
  if (cluster_size <= 1) return 0;
  // The epsilon absorbs representation error such as 0.6 * 5 = 3.0000000000000004.
  const double need = std::ceil(gamma_min * (cluster_size - 1) - 1e-9);
  return std::max(0, static_cast<int>(need));
}

double quasi_clique_gamma(const AttributedGraph& graph, std::span<const VertexId> members) {
  if (members.size() < 2) throw DataError("quasi_clique_gamma needs at least 2 vertices");
  int min_links = std::numeric_limits<int>::max();
  for (VertexId v : members) {
    int links = 0;
    for (VertexId u : members) {
      if (u != v && graph.has_edge(u, v)) ++links;
    }
    min_links = std::min(min_links, links);
  }
  return static_cast<double>(min_links) / static_cast<double>(members.size() - 1);
}

std::vector<int> max_subspace(std::span<const VertexId> members,
                              const Eigen::MatrixXd& attributes, double w) {
  std::vector<int> out;
  if (members.empty()) return out;
  for (Eigen::Index a = 0; a < attributes.cols(); ++a) {
    double lo = attributes(members[0], a);
    double hi = lo;
    for (VertexId v : members) {
      lo = std::min(lo, attributes(v, a));
      hi = std::max(hi, attributes(v, a));
    }
    if (hi - lo <= w) out.push_back(static_cast<int>(a));
  }
  return out;
}

bool is_connected_subgraph(const AttributedGraph& graph, std::span<const VertexId> members) {
  if (members.empty()) return false;
  std::vector<char> seen(members.size(), 0);
  std::vector<std::size_t> stack = {0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < members.size(); ++j) {
      if (!seen[j] && graph.has_edge(members[i], members[j])) {
        seen[j] = 1;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == members.size();
}

std::optional<TwofoldCluster> make_cluster(const AttributedGraph& graph,
                                           std::vector<VertexId> members,
                                           const ClusterParams& params) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const int n = static_cast<int>(members.size());
  if (n < std::max(params.n_min, 2)) return std::nullopt;
  const double gamma = quasi_clique_gamma(graph, members);
  const int min_links = static_cast<int>(std::lround(gamma * (n - 1)));
  if (min_links < required_degree(n, params.gamma_min)) return std::nullopt;
  if (!is_connected_subgraph(graph, members)) return std::nullopt;
  auto subspace = max_subspace(members, graph.attributes(), params.w);
  if (static_cast<int>(subspace.size()) < params.s_min) return std::nullopt;
  TwofoldCluster c;
  c.quality = cluster_quality<double>(n, static_cast<double>(subspace.size()), gamma, params);
  c.members = std::move(members);
  c.subspace = std::move(subspace);
  c.gamma = gamma;
  return c;
}

bool satisfies_constraints(const AttributedGraph& graph, const TwofoldCluster& cluster,
                           const ClusterParams& params) {
  const int n = static_cast<int>(cluster.members.size());
  if (n < std::max(params.n_min, 2)) return false;
  if (static_cast<int>(cluster.subspace.size()) < params.s_min) return false;
  for (VertexId v : cluster.members) {
    if (v < 0 || v >= graph.num_vertices()) return false;
  }
  for (VertexId v : cluster.members) {
    int links = 0;
    for (VertexId u : cluster.members) {
      if (u != v && graph.has_edge(u, v)) ++links;
    }
    if (links < required_degree(n, params.gamma_min)) return false;
  }
  if (!is_connected_subgraph(graph, cluster.members)) return false;
  const auto& attrs = graph.attributes();
  for (int a : cluster.subspace) {
    double lo = attrs(cluster.members[0], a);
    double hi = lo;
    for (VertexId v : cluster.members) {
      lo = std::min(lo, attrs(v, a));
      hi = std::max(hi, attrs(v, a));
    }
    if (hi - lo > params.w) return false;
  }
  return true;
}

bool is_redundant(const TwofoldCluster& lower, const TwofoldCluster& upper, double r_obj,
                  double r_dim) {
  if (lower.members.empty() || lower.subspace.empty()) return false;
  const double obj = static_cast<double>(intersection_size(lower.members, upper.members)) /
                     static_cast<double>(lower.members.size());
  const double dim = static_cast<double>(intersection_size(lower.subspace, upper.subspace)) /
                     static_cast<double>(lower.subspace.size());
  return obj >= r_obj && dim >= r_dim;
}

std::vector<TwofoldCluster> prune_redundant(std::vector<TwofoldCluster> candidates,
                                            double r_obj, double r_dim) {
  std::sort(candidates.begin(), candidates.end(), better);
  std::vector<TwofoldCluster> admitted;
  for (auto& c : candidates) {
    const bool redundant = std::any_of(admitted.begin(), admitted.end(), [&](const auto& kept) {
      return is_redundant(c, kept, r_obj, r_dim);
    });
    if (!redundant) admitted.push_back(std::move(c));
  }
  return admitted;
}

ClusteringResult make_result(std::vector<TwofoldCluster> clusters, const ClusterParams& params) {
  ClusteringResult result;
  result.params = params;
  for (const auto& c : clusters) {
    result.c_max = std::max(result.c_max, static_cast<int>(c.members.size()));
    result.s_max = std::max(result.s_max, static_cast<int>(c.subspace.size()));
  }
  result.clusters = std::move(clusters);
  return result;
}

ClusteringResult enumerate_clusters_exact(const AttributedGraph& graph,
                                          const ClusterParams& params) {
  params.validate();
  const int n = graph.num_vertices();
  if (n > params.oracle_bound) {
    throw OracleBoundError("exact enumeration refused: graph has " + std::to_string(n) +
                           " vertices, oracle bound is " +
                           std::to_string(params.oracle_bound));
  }
  std::vector<std::uint32_t> adjacency(static_cast<std::size_t>(n), 0);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId u : graph.neighbors(v)) adjacency[static_cast<std::size_t>(v)] |= 1U << u;
  }
  const int smallest = std::max(params.n_min, 2);
  std::vector<TwofoldCluster> candidates;
  const std::uint32_t end = n == 0 ? 0 : (1U << n);
  for (std::uint32_t mask = 1; mask < end; ++mask) {
    const int size = std::popcount(mask);
    if (size < smallest) continue;
    const int need = required_degree(size, params.gamma_min);
    int min_links = size;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      min_links = std::min(min_links, std::popcount(adjacency[static_cast<std::size_t>(v)] & mask));
    }
    if (min_links < need) continue;
    // Connectivity by frontier expansion over bitmasks.
    std::uint32_t reached = mask & (~mask + 1);
    while (true) {
      std::uint32_t grown = reached;
      for (std::uint32_t rest = reached; rest; rest &= rest - 1) {
        grown |= adjacency[static_cast<std::size_t>(std::countr_zero(rest))] & mask;
      }
      if (grown == reached) break;
      reached = grown;
    }
    if (reached != mask) continue;

    std::vector<VertexId> members;
    for (std::uint32_t rest = mask; rest; rest &= rest - 1) {
      members.push_back(std::countr_zero(rest));
    }
    auto subspace = max_subspace(members, graph.attributes(), params.w);
    if (static_cast<int>(subspace.size()) < params.s_min) continue;
    TwofoldCluster c;
    c.gamma = static_cast<double>(min_links) / (size - 1);
    c.quality = cluster_quality<double>(size, static_cast<double>(subspace.size()), c.gamma,
                                        params);
    c.members = std::move(members);
    c.subspace = std::move(subspace);
    candidates.push_back(std::move(c));
  }
  return make_result(prune_redundant(std::move(candidates), params.r_obj, params.r_dim),
                     params);
}

ClusteringResult grasp_cluster(const AttributedGraph& graph, const ClusterParams& params,
                               int threads) {
  params.validate();
  // Seed edges weighted by how many attributes their endpoints agree on.
  std::vector<Edge> seeds;
  std::vector<std::uint64_t> cumulative;
  std::uint64_t total = 0;
  for (auto [u, v] : graph.edges()) {
    const VertexId pair[] = {u, v};
    const auto agree = static_cast<std::uint64_t>(
        max_subspace(pair, graph.attributes(), params.w).size());
    if (agree < static_cast<std::uint64_t>(params.s_min)) continue;
    total += agree;
    seeds.emplace_back(u, v);
    cumulative.push_back(total);
  }
  if (seeds.empty() || params.grasp_iterations == 0) return make_result({}, params);

  GraspSearch search(graph, params, seeds, cumulative);
  std::vector<std::vector<TwofoldCluster>> pool(
      static_cast<std::size_t>(params.grasp_iterations));
  parallel_for(pool.size(), threads, [&](std::size_t i) { pool[i] = search.run(i); });

  std::vector<TwofoldCluster> candidates;
  for (auto& found : pool) {
    for (auto& c : found) candidates.push_back(std::move(c));
  }
  std::sort(candidates.begin(), candidates.end(), better);
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](const auto& x, const auto& y) { return x.members == y.members; }),
                   candidates.end());
  return make_result(prune_redundant(std::move(candidates), params.r_obj, params.r_dim),
                     params);
}

}  // namespace insider
