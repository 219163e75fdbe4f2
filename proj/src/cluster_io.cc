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

#include <algorithm>
#include <string>
#include <unordered_map>

#include "insider/clusterer.h"
#include "insider/error.h"
#include "insider/text.h"
#include "json.hpp"

namespace insider {
namespace {

using nlohmann::json;

json params_to_json(const ClusterParams& p) {
  return json{{"n_min", p.n_min},
              {"s_min", p.s_min},
              {"gamma_min", p.gamma_min},
              {"w", p.w},
              {"a_exp", p.a_exp},
              {"b_exp", p.b_exp},
              {"c_exp", p.c_exp},
              {"r_obj", p.r_obj},
              {"r_dim", p.r_dim},
              {"rng_seed", p.rng_seed},
              {"grasp_iterations", p.grasp_iterations},
              {"rcl_alpha", p.rcl_alpha},
              {"oracle_bound", p.oracle_bound}};
}

ClusterParams params_from_json(const json& j) {
  ClusterParams p;
  p.n_min = j.value("n_min", p.n_min);
  p.s_min = j.value("s_min", p.s_min);
  p.gamma_min = j.value("gamma_min", p.gamma_min);
  p.w = j.value("w", p.w);
  p.a_exp = j.value("a_exp", p.a_exp);
  p.b_exp = j.value("b_exp", p.b_exp);
  p.c_exp = j.value("c_exp", p.c_exp);
  p.r_obj = j.value("r_obj", p.r_obj);
  p.r_dim = j.value("r_dim", p.r_dim);
  p.rng_seed = j.value("rng_seed", p.rng_seed);
  p.grasp_iterations = j.value("grasp_iterations", p.grasp_iterations);
  p.rcl_alpha = j.value("rcl_alpha", p.rcl_alpha);
  p.oracle_bound = j.value("oracle_bound", p.oracle_bound);
  return p;
}

std::string attribute_label(const AttributedGraph& graph, int a) {
  const auto& names = graph.attribute_names();
  if (static_cast<std::size_t>(a) < names.size()) return names[static_cast<std::size_t>(a)];
  return "a" + std::to_string(a);
}

}  // namespace

void write_clusters_jsonl(std::ostream& out, const ClusteringResult& result,
                          const AttributedGraph& graph) {
  out << json{{"params", params_to_json(result.params)},
              {"clusters", result.clusters.size()},
              {"c_max", result.c_max},
              {"s_max", result.s_max}}
             .dump()
      << '\n';
  for (const auto& c : result.clusters) {
    json members = json::array();
    for (VertexId v : c.members) members.push_back(graph.user(v));
    json subspace = json::array();
    for (int a : c.subspace) subspace.push_back(attribute_label(graph, a));
    out << json{{"members", members}, {"subspace", subspace}, {"gamma", c.gamma},
                {"quality", c.quality}}
               .dump()
        << '\n';
  }
}

ClusteringResult read_clusters_jsonl(std::istream& in, const AttributedGraph& graph) {
  std::string line;
  if (!read_line(in, line)) throw SchemaError("cluster file is empty");
  json header;
  try {
    header = json::parse(line);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("cluster header is not JSON: ") + e.what());
  }
  if (!header.contains("params")) throw SchemaError("cluster header lacks params");
  const ClusterParams params = params_from_json(header["params"]);

  std::unordered_map<std::string, int> attr_index;
  for (int a = 0; a < graph.num_attributes(); ++a) attr_index[attribute_label(graph, a)] = a;

  std::vector<TwofoldCluster> clusters;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      TwofoldCluster c;
      for (const auto& user : j.at("members")) {
        auto v = graph.index_of(user.get<std::string>());
        if (!v) throw DataError("cluster references unknown user " + user.get<std::string>());
        c.members.push_back(*v);
      }
      for (const auto& name : j.at("subspace")) {
        auto it = attr_index.find(name.get<std::string>());
        if (it == attr_index.end()) {
          throw DataError("cluster references unknown attribute " + name.get<std::string>());
        }
        c.subspace.push_back(it->second);
      }
      std::sort(c.members.begin(), c.members.end());
      std::sort(c.subspace.begin(), c.subspace.end());
      c.gamma = j.at("gamma").get<double>();
      c.quality = j.at("quality").get<double>();
      clusters.push_back(std::move(c));
    } catch (const json::exception& e) {
      throw SchemaError("bad cluster record at line " + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return make_result(std::move(clusters), params);
}

}  // namespace insider
