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

#include "insider/graph.h"

#include <algorithm>
#include <set>

#include "insider/error.h"
#include "insider/features.h"
#include "insider/text.h"

namespace insider {
namespace {

bool has_internal_domain(const std::string& address, const std::string& domain) {
  const std::string a = to_lower(address);
  const std::string suffix = "@" + to_lower(domain);
  return a.size() > suffix.size() &&
         a.compare(a.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

AttributedGraph::AttributedGraph(std::vector<std::string> users,
                                 const std::vector<Edge>& edges,
                                 Eigen::MatrixXd attributes,
                                 std::vector<std::string> attribute_names)
    : users_(std::move(users)),
      attributes_(std::move(attributes)),
      attribute_names_(std::move(attribute_names)) {
  const auto n = users_.size();
  if (static_cast<std::size_t>(attributes_.rows()) != n) {
    throw DataError("attribute matrix has " + std::to_string(attributes_.rows()) +
                    " rows for " + std::to_string(n) + " vertices");
  }
  if (!attribute_names_.empty() &&
      attribute_names_.size() != static_cast<std::size_t>(attributes_.cols())) {
    throw DataError("attribute name count does not match attribute columns");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(users_[i], static_cast<VertexId>(i)).second) {
      throw DataError("duplicate vertex " + users_[i]);
    }
  }
  adjacency_.assign(n, {});
  words_per_row_ = (n + 63) / 64;
  bits_.assign(n * words_per_row_, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n ||
        static_cast<std::size_t>(v) >= n) {
      throw DataError("edge endpoint out of range");
    }
    if (u == v || has_edge(u, v)) continue;
    bits_[static_cast<std::size_t>(u) * words_per_row_ + static_cast<std::size_t>(v) / 64] |=
        std::uint64_t{1} << (v % 64);
    bits_[static_cast<std::size_t>(v) * words_per_row_ + static_cast<std::size_t>(u) / 64] |=
        std::uint64_t{1} << (u % 64);
    adjacency_[static_cast<std::size_t>(u)].push_back(v);
    adjacency_[static_cast<std::size_t>(v)].push_back(u);
    ++num_edges_;
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

bool AttributedGraph::has_edge(VertexId u, VertexId v) const {
  return (bits_[static_cast<std::size_t>(u) * words_per_row_ +
                static_cast<std::size_t>(v) / 64] >>
          (v % 64)) &
         1U;
}

std::optional<VertexId> AttributedGraph::index_of(std::string_view user) const {
  auto it = index_.find(std::string(user));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> AttributedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(num_edges_));
  for (VertexId u = 0; u < num_vertices(); ++u) {
    for (VertexId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Eigen::SparseMatrix<double> AttributedGraph::adjacency_matrix() const {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(2 * num_edges_));
  for (VertexId u = 0; u < num_vertices(); ++u) {
    for (VertexId v : neighbors(u)) triplets.emplace_back(u, v, 1.0);
  }
  Eigen::SparseMatrix<double> a(num_vertices(), num_vertices());
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

GraphBuildResult build_graph(const OrgDirectory& directory,
                             const std::vector<LogEvent>& email_events,
                             Eigen::MatrixXd attributes,
                             std::vector<std::string> attribute_names,
                             const GraphBuildOptions& options) {
  GraphBuildResult result;
  std::set<Edge> hierarchy;
  for (std::size_t i = 0; i < directory.size(); ++i) {
    const auto& e = directory.at(i);
    if (!e.supervisor) continue;
    const auto boss = static_cast<VertexId>(*directory.index_of(*e.supervisor));
    const auto self = static_cast<VertexId>(i);
    if (boss != self) hierarchy.insert(std::minmax(boss, self));
  }

  std::set<Edge> mail;
  std::size_t row = 0;
  for (const auto& ev : email_events) {
    ++row;
    const auto* m = ev.email();
    if (m == nullptr) continue;
    auto sender = directory.index_of(ev.user);
    if (!sender) sender = directory.index_of_email(m->from);
    if (!sender) {
      result.rejects.push_back({"email", row, "unknown sender " + ev.user});
      continue;
    }
    std::vector<VertexId> targets;
    std::string unresolved;
    for (const auto* list : {&m->to, &m->cc, &m->bcc}) {
      for (const auto& addr : *list) {
        if (!has_internal_domain(addr, options.internal_domain)) continue;
        auto r = directory.index_of_email(addr);
        if (!r) {
          unresolved = addr;
          break;
        }
        targets.push_back(static_cast<VertexId>(*r));
      }
      if (!unresolved.empty()) break;
    }
    if (!unresolved.empty()) {
      result.rejects.push_back(
          {"email", row, "unresolvable internal address " + unresolved + " in " + ev.event_id});
      continue;
    }
    const auto s = static_cast<VertexId>(*sender);
    for (VertexId t : targets) {
      if (t != s) mail.insert(std::minmax(s, t));
    }
  }

  std::vector<Edge> edges(hierarchy.begin(), hierarchy.end());
  edges.insert(edges.end(), mail.begin(), mail.end());
  result.hierarchy_edges = static_cast<std::int64_t>(hierarchy.size());
  result.graph = AttributedGraph(directory.user_ids(), edges, std::move(attributes),
                                 std::move(attribute_names));
  result.email_edges = result.graph.num_edges() - result.hierarchy_edges;
  return result;
}

DegreeProfile degree_profile(const AttributedGraph& graph) {
  DegreeProfile p;
  p.num_vertices = graph.num_vertices();
  p.num_edges = graph.num_edges();
  p.degrees.resize(graph.num_vertices());
  for (VertexId v = 0; v < graph.num_vertices(); ++v) p.degrees(v) = graph.degree(v);
  return p;
}

void write_edges_csv(std::ostream& out, const AttributedGraph& graph) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.reserve(static_cast<std::size_t>(graph.num_edges()));
  for (auto [u, v] : graph.edges()) {
    const auto& a = graph.user(u);
    const auto& b = graph.user(v);
    rows.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(rows.begin(), rows.end());
  out << "src,dst\n";
  for (const auto& [a, b] : rows) {
    out << escape_csv_field(a) << ',' << escape_csv_field(b) << '\n';
  }
}

AttributedGraph load_graph(std::istream& nodes, std::istream& edges) {
  AttributeTable table = read_attribute_csv(nodes, "nodes");
  std::unordered_map<std::string, VertexId> index;
  for (std::size_t i = 0; i < table.users.size(); ++i) {
    index.emplace(table.users[i], static_cast<VertexId>(i));
  }
  std::string line;
  if (!read_line(edges, line)) throw SchemaError("edges file is empty");
  auto header = split_csv_record(line);
  if (!header || header->size() != 2 || to_lower((*header)[0]) != "src" ||
      to_lower((*header)[1]) != "dst") {
    throw SchemaError("edges file must have header src,dst");
  }
  std::vector<Edge> list;
  std::size_t line_no = 1;
  while (read_line(edges, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_record(line);
    if (!fields || fields->size() != 2) {
      throw DataError("malformed edge row at line " + std::to_string(line_no));
    }
    auto a = index.find((*fields)[0]);
    auto b = index.find((*fields)[1]);
    if (a == index.end() || b == index.end()) {
      throw DataError("edge at line " + std::to_string(line_no) +
                      " references an unknown user");
    }
    list.emplace_back(a->second, b->second);
  }
  return AttributedGraph(std::move(table.users), list, std::move(table.values),
                         std::move(table.names));
}

}  // namespace insider
