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

#include "insider/ranker.h"

#include <algorithm>
#include <array>
#include <numeric>

#include "insider/error.h"
#include "insider/text.h"

namespace insider {
namespace {

void fill_ranks(OutlierScoreTable& table) {
  table.ranks.resize(static_cast<Eigen::Index>(table.users.size()), kScoreVariants);
  for (int variant = 1; variant <= kScoreVariants; ++variant) {
    const auto order = rank_users(table, variant);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      table.ranks(order[pos], variant - 1) = static_cast<int>(pos) + 1;
    }
  }
}

}  // namespace

OutlierScoreTable compute_scores(const ClusteringResult& result,
                                 const CentralityTable& centralities,
                                 const AttributedGraph& graph, const ScoreOptions& options) {
  const int n = graph.num_vertices();
  if (centralities.degree.size() != n || centralities.eigenvector.size() != n ||
      centralities.betweenness.size() != n) {
    throw DataError("centrality table covers " + std::to_string(centralities.degree.size()) +
                    " vertices, graph has " + std::to_string(n));
  }
  for (const auto& c : result.clusters) {
    for (VertexId v : c.members) {
      if (v < 0 || v >= n) throw DataError("cluster member outside the graph's vertex set");
    }
  }

  NormalizationContext ctx;
  for (const auto& c : result.clusters) {
    ctx.c_max = std::max(ctx.c_max, static_cast<double>(c.members.size()));
    ctx.s_max = std::max(ctx.s_max, static_cast<double>(c.subspace.size()));
  }
  ctx.deg_max = centralities.deg_max;
  ctx.ec_max = centralities.ec_max;
  ctx.bc_max = centralities.bc_max;

  // Per-vertex sums of the cluster terms (|C|/c_max + |S|/s_max).
  Eigen::VectorXd cluster_part = Eigen::VectorXd::Zero(n);
  Eigen::VectorXi memberships = Eigen::VectorXi::Zero(n);
  for (const auto& c : result.clusters) {
    const double term = normalized(static_cast<double>(c.members.size()), ctx.c_max) +
                        normalized(static_cast<double>(c.subspace.size()), ctx.s_max);
    for (VertexId v : c.members) {
      cluster_part(v) += term;
      ++memberships(v);
    }
  }

  OutlierScoreTable table;
  table.users = graph.users();
  table.memberships = memberships;
  table.scores.setZero(n, kScoreVariants);
  for (VertexId v = 0; v < n; ++v) {
    const int k = memberships(v);
    if (k == 0) continue;
    const double deg = normalized(centralities.degree(v), ctx.deg_max);
    const double ec = normalized(centralities.eigenvector(v), ctx.ec_max);
    const double bc = normalized(centralities.betweenness(v), ctx.bc_max);
    // Multiplicity of the per-vertex terms.
    const double m = options.centrality_outside_sum ? 1.0 : static_cast<double>(k);
    const double base = cluster_part(v);
    table.scores(v, 0) = (base + m * deg) / 3.0;
    table.scores(v, 1) = (base + m * ec) / 3.0;
    table.scores(v, 2) = (base + m * bc) / 3.0;
    table.scores(v, 3) = (base + m * deg + m * ec) / 4.0;
    table.scores(v, 4) = (base + m * deg + m * bc) / 4.0;
    table.scores(v, 5) = (base + m * deg + m * ec + m * bc) / 5.0;
  }

  fill_ranks(table);
  return table;
}

std::vector<int> rank_users(const OutlierScoreTable& table, int variant) {
  if (variant < 1 || variant > kScoreVariants) {
    throw ConfigError("score variant must be in 1..6, got " + std::to_string(variant));
  }
  const int col = variant - 1;
  std::vector<int> order(table.users.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double sa = table.scores(a, col);
    const double sb = table.scores(b, col);
    if (sa != sb) return sa < sb;
    if (table.memberships(a) != table.memberships(b)) {
      return table.memberships(a) < table.memberships(b);
    }
    return table.users[static_cast<std::size_t>(a)] < table.users[static_cast<std::size_t>(b)];
  });
  return order;
}

void write_scores_csv(std::ostream& out, const OutlierScoreTable& table) {
  out << "user_id";
  for (int k = 1; k <= kScoreVariants; ++k) out << ",score_" << k;
  out << ",memberships\n";
  for (std::size_t i = 0; i < table.users.size(); ++i) {
    const auto v = static_cast<Eigen::Index>(i);
    out << escape_csv_field(table.users[i]);
    for (int k = 0; k < kScoreVariants; ++k) out << ',' << format_double(table.scores(v, k));
    out << ',' << table.memberships(v) << '\n';
  }
}

OutlierScoreTable read_scores_csv(std::istream& in) {
  std::string line;
  if (!read_line(in, line)) throw SchemaError("scores file is empty");
  auto header = split_csv_record(line);
  if (!header || header->size() != kScoreVariants + 2 || (*header)[0] != "user_id" ||
      header->back() != "memberships") {
    throw SchemaError("scores file must have header user_id,score_1,...,score_6,memberships");
  }
  std::vector<std::string> users;
  std::vector<std::array<double, kScoreVariants>> rows;
  std::vector<int> counts;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_record(line);
    if (!fields || fields->size() != header->size()) {
      throw SchemaError("malformed scores row at line " + std::to_string(line_no));
    }
    std::array<double, kScoreVariants> row{};
    for (int k = 0; k < kScoreVariants; ++k) {
      auto value = parse_double((*fields)[static_cast<std::size_t>(k) + 1]);
      if (!value) throw SchemaError("bad score at line " + std::to_string(line_no));
      row[static_cast<std::size_t>(k)] = *value;
    }
    auto memberships = parse_int(fields->back());
    if (!memberships) throw SchemaError("bad memberships at line " + std::to_string(line_no));
    users.push_back((*fields)[0]);
    rows.push_back(row);
    counts.push_back(static_cast<int>(*memberships));
  }
  OutlierScoreTable table;
  const auto n = static_cast<Eigen::Index>(users.size());
  table.users = std::move(users);
  table.scores.resize(n, kScoreVariants);
  table.memberships.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k < kScoreVariants; ++k) {
      table.scores(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
    table.memberships(i) = counts[static_cast<std::size_t>(i)];
  }
  fill_ranks(table);
  return table;
}

void write_ranking_csv(std::ostream& out, const OutlierScoreTable& table, int variant) {
  const auto order = rank_users(table, variant);
  out << "rank,user_id,score\n";
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const int v = order[pos];
    out << pos + 1 << ',' << escape_csv_field(table.users[static_cast<std::size_t>(v)]) << ','
        << format_double(table.scores(v, variant - 1)) << '\n';
  }
}

}  // namespace insider
