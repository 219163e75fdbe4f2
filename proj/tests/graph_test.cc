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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "insider/error.h"
#include "insider/features.h"
#include "oracles.h"

namespace insider {
namespace {

using testing::make_graph;

Employee person(const std::string& id, std::optional<std::string> boss = std::nullopt) {
  return {id, id, id + "@dtaa.com", "R", "F", "D", "T", std::move(boss)};
}

LogEvent mail(const std::string& from, std::vector<std::string> to,
              std::vector<std::string> cc = {}) {
  return {"{m}", std::chrono::sys_days{std::chrono::year{2010} / 1 / 4}, from, "PC", EventKind::kEmail,
          EmailPayload{from + "@dtaa.com", std::move(to), std::move(cc), {}, 10, 0}};
}

GraphBuildResult build(const OrgDirectory& dir, const std::vector<LogEvent>& mails) {
  return build_graph(dir, mails, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dir.size()), 1),
                     {"a0"});
}

TEST(Graph, ConstructorCollapsesDuplicatesAndLoops) {
  const auto g = make_graph(4, {{0, 1}, {1, 0}, {2, 2}, {1, 2}, {0, 1}});
  EXPECT_EQ(g.num_edges(), 2);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(2, 2));
  EXPECT_EQ(g.degree(3), 0);
  EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(Graph, ConstructorValidates) {
  EXPECT_THROW(make_graph(2, {{0, 2}}), DataError);
  EXPECT_THROW(AttributedGraph({"a", "b"}, {}, Eigen::MatrixXd::Zero(3, 1), {"x"}), DataError);
}

TEST(Graph, HierarchyEdge) {
  OrgDirectory dir({person("U1"), person("U2", "U1")});
  const auto r = build(dir, {});
  EXPECT_EQ(r.graph.num_edges(), 1);
  EXPECT_TRUE(r.graph.has_edge(0, 1));
  EXPECT_EQ(r.hierarchy_edges, 1);
  EXPECT_EQ(r.email_edges, 0);
}

TEST(Graph, ExternalRecipientsAddNoEdges) {
  OrgDirectory dir({person("U1"), person("U2"), person("U3")});
  const auto r = build(dir, {mail("U1", {"U2@dtaa.com", "someone@ext.com"})});
  EXPECT_TRUE(r.rejects.empty());
  EXPECT_EQ(r.graph.num_edges(), 1);
  EXPECT_TRUE(r.graph.has_edge(0, 1));
}

TEST(Graph, RepeatedAndReciprocalMailCollapse) {
  OrgDirectory dir({person("U1"), person("U2"), person("U3", "U1")});
  const auto r = build(dir, {mail("U1", {"u2@dtaa.com"}), mail("U2", {"U1@DTAA.com"}),
                             mail("U1", {"U2@dtaa.com"}, {"u3@dtaa.com"})});
  // U1-U2 by mail, U1-U3 by both hierarchy and mail.
  EXPECT_EQ(r.graph.num_edges(), 2);
  EXPECT_EQ(r.hierarchy_edges, 1);
  EXPECT_EQ(r.email_edges, 1);
}

TEST(Graph, SelfMailAddsNoEdge) {
  OrgDirectory dir({person("U1"), person("U2")});
  const auto r = build(dir, {mail("U1", {"u1@dtaa.com"})});
  EXPECT_EQ(r.graph.num_edges(), 0);
}

TEST(Graph, UnresolvableInternalAddressIsRejected) {
  OrgDirectory dir({person("U1"), person("U2")});
  const auto r = build(dir, {mail("U1", {"u2@dtaa.com", "ghost@dtaa.com"}), mail("U9", {"u1@dtaa.com"})});
  EXPECT_EQ(r.rejects.size(), 2u);
  EXPECT_EQ(r.graph.num_edges(), 0);
}

// Property: sum of degrees is twice the edge count, and the edge set does not
// depend on the order of the mail log.
TEST(Graph, HandshakeAndOrderInsensitivity) {
  std::mt19937_64 rng(3);
  std::vector<Employee> people;
  for (int i = 0; i < 12; ++i) {
    people.push_back(person("U" + std::to_string(10 + i),
                            i > 0 ? std::optional<std::string>("U" + std::to_string(10 + i / 2))
                                  : std::nullopt));
  }
  OrgDirectory dir(people);
  std::vector<LogEvent> mails;
  for (int k = 0; k < 40; ++k) {
    const int a = static_cast<int>(rng() % 12);
    const int b = static_cast<int>(rng() % 12);
    mails.push_back(mail("U" + std::to_string(10 + a), {"U" + std::to_string(10 + b) + "@dtaa.com"}));
  }
  const auto r1 = build(dir, mails);
  std::shuffle(mails.begin(), mails.end(), rng);
  const auto r2 = build(dir, mails);
  EXPECT_EQ(r1.graph.edges(), r2.graph.edges());
  const auto prof = degree_profile(r1.graph);
  EXPECT_EQ(prof.degrees.sum(), 2 * prof.num_edges);
  const Eigen::SparseMatrix<double> a = r1.graph.adjacency_matrix();
  EXPECT_EQ(a.sum(), 2.0 * static_cast<double>(r1.graph.num_edges()));
  EXPECT_EQ(Eigen::MatrixXd(a), Eigen::MatrixXd(a).transpose());
}

TEST(Graph, CsvRoundTrip) {
  std::mt19937_64 rng(9);
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(6, 3).cwiseAbs();
  const auto g = make_graph(6, testing::random_edges(6, 0.5, rng), x);
  std::ostringstream nodes;
  AttributeTable t{g.users(), g.attribute_names(), g.attributes()};
  write_attribute_csv(nodes, t);
  std::ostringstream edges;
  write_edges_csv(edges, g);
  std::istringstream nin(nodes.str());
  std::istringstream ein(edges.str());
  const auto back = load_graph(nin, ein);
  EXPECT_EQ(back.users(), g.users());
  EXPECT_EQ(back.edges(), g.edges());
  EXPECT_EQ(back.attributes(), g.attributes());
}

TEST(Graph, LoadRejectsUnknownEndpoint) {
  std::istringstream nodes("user_id,a0\nU1,0\nU2,1\n");
  std::istringstream edges("src,dst\nU1,U7\n");
  EXPECT_THROW(load_graph(nodes, edges), DataError);
}

}  // namespace
}  // namespace insider
