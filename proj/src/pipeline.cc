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

#include "insider/pipeline.h"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <set>

#include "insider/centrality.h"
#include "insider/error.h"
#include "insider/eval.h"
#include "insider/graph.h"
#include "insider/ingest.h"
#include "insider/ranker.h"
#include "insider/text.h"

namespace insider {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

constexpr const char* kToolVersion = "insider-graph 1.0.0";

constexpr std::array<std::pair<LogKind, const char*>, 4> kLogFiles = {{
    {LogKind::kLogon, "logon"},
    {LogKind::kDevice, "device"},
    {LogKind::kEmail, "email"},
    {LogKind::kFile, "file"},
}};

constexpr std::array<const char*, 7> kDayNames = {"Sun", "Mon", "Tue", "Wed",
                                                  "Thu", "Fri", "Sat"};

// ---------------------------------------------------------------------------
// Config fields

std::string as_string(const json& j, const std::string& key) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return j.dump();
  throw ConfigError("config key '" + key + "' expects a string");
}

template <typename T>
T as_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError("config key '" + key + "' expects a number");
  if constexpr (std::is_integral_v<T>) {
    if (!j.is_number_integer()) throw ConfigError("config key '" + key + "' expects an integer");
    if constexpr (std::is_unsigned_v<T>) {
      if (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0) {
        throw ConfigError("config key '" + key + "' expects a non-negative integer");
      }
    }
  }
  return j.get<T>();
}

bool as_bool(const json& j, const std::string& key) {
  if (!j.is_boolean()) throw ConfigError("config key '" + key + "' expects true or false");
  return j.get<bool>();
}

std::set<int> as_int_set(const json& j, const std::string& key) {
  if (!j.is_array()) throw ConfigError("config key '" + key + "' expects an array of integers");
  std::set<int> out;
  for (const auto& e : j) out.insert(as_number<int>(e, key));
  return out;
}

std::chrono::minutes parse_clock(const std::string& text, const std::string& key) {
  const auto parts = split(text, ':');
  if (parts.size() == 2) {
    const auto h = parse_int(parts[0]);
    const auto m = parse_int(parts[1]);
    if (h && m && *h >= 0 && *h <= 24 && *m >= 0 && *m < 60 && *h * 60 + *m <= 24 * 60) {
      return std::chrono::minutes(*h * 60 + *m);
    }
  }
  throw ConfigError("config key '" + key + "' expects HH:MM, got '" + text + "'");
}

std::string format_clock(std::chrono::minutes m) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%02d:%02d", static_cast<int>(m.count() / 60),
                static_cast<int>(m.count() % 60));
  return buf;
}

struct Field {
  const char* key;
  std::function<void(PipelineConfig&, const json&)> set;
  std::function<ordered_json(const PipelineConfig&)> get;
};

#define INSIDER_PATH_FIELD(name)                                                         \
  Field {                                                                                \
    #name, [](PipelineConfig& c, const json& j) { c.name = as_string(j, #name); },      \
        [](const PipelineConfig& c) { return ordered_json(c.name.generic_string()); }   \
  }
#define INSIDER_NUMBER_FIELD(key, member, type)                                        \
  Field {                                                                              \
    key, [](PipelineConfig& c, const json& j) { c.member = as_number<type>(j, key); }, \
        [](const PipelineConfig& c) { return ordered_json(c.member); }                 \
  }
#define INSIDER_BOOL_FIELD(key, member)                                              \
  Field {                                                                            \
    key, [](PipelineConfig& c, const json& j) { c.member = as_bool(j, key); },      \
        [](const PipelineConfig& c) { return ordered_json(c.member); }               \
  }
#define INSIDER_STRING_FIELD(key, member)                                            \
  Field {                                                                            \
    key, [](PipelineConfig& c, const json& j) { c.member = as_string(j, key); },    \
        [](const PipelineConfig& c) { return ordered_json(c.member); }               \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> kFields = {
      INSIDER_PATH_FIELD(log_dir),
      INSIDER_PATH_FIELD(ldap_dir),
      INSIDER_PATH_FIELD(graph_dir),
      INSIDER_PATH_FIELD(output_dir),
      INSIDER_PATH_FIELD(ground_truth),
      Field{"business_start",
            [](PipelineConfig& c, const json& j) {
              c.calendar.business_start =
                  parse_clock(as_string(j, "business_start"), "business_start");
            },
            [](const PipelineConfig& c) {
              return ordered_json(format_clock(c.calendar.business_start));
            }},
      Field{"business_end",
            [](PipelineConfig& c, const json& j) {
              c.calendar.business_end = parse_clock(as_string(j, "business_end"), "business_end");
            },
            [](const PipelineConfig& c) {
              return ordered_json(format_clock(c.calendar.business_end));
            }},
      Field{"business_days",
            [](PipelineConfig& c, const json& j) {
              if (!j.is_array()) {
                throw ConfigError("config key 'business_days' expects an array such as [\"Mon\"]");
              }
              std::array<bool, 7> days{};
              for (const auto& d : j) {
                const auto name = as_string(d, "business_days");
                auto it = std::find(kDayNames.begin(), kDayNames.end(), name);
                if (it == kDayNames.end()) {
                  throw ConfigError("config key 'business_days': unknown day '" + name + "'");
                }
                days[static_cast<std::size_t>(it - kDayNames.begin())] = true;
              }
              c.calendar.business_days = days;
            },
            [](const PipelineConfig& c) {
              ordered_json days = ordered_json::array();
              for (std::size_t i = 0; i < 7; ++i) {
                if (c.calendar.business_days[i]) days.push_back(kDayNames[i]);
              }
              return days;
            }},
      INSIDER_STRING_FIELD("internal_domain", internal_domain),
      INSIDER_BOOL_FIELD("normalize", normalize),
      INSIDER_NUMBER_FIELD("n_min", cluster.n_min, int),
      INSIDER_NUMBER_FIELD("s_min", cluster.s_min, int),
      INSIDER_NUMBER_FIELD("gamma_min", cluster.gamma_min, double),
      INSIDER_NUMBER_FIELD("w", cluster.w, double),
      INSIDER_NUMBER_FIELD("a_exp", cluster.a_exp, double),
      INSIDER_NUMBER_FIELD("b_exp", cluster.b_exp, double),
      INSIDER_NUMBER_FIELD("c_exp", cluster.c_exp, double),
      INSIDER_NUMBER_FIELD("r_obj", cluster.r_obj, double),
      INSIDER_NUMBER_FIELD("r_dim", cluster.r_dim, double),
      Field{"seed",
            [](PipelineConfig& c, const json& j) {
              c.cluster.rng_seed = as_number<std::uint64_t>(j, "seed");
              c.synth.rng_seed = c.cluster.rng_seed;
            },
            [](const PipelineConfig& c) { return ordered_json(c.cluster.rng_seed); }},
      INSIDER_NUMBER_FIELD("grasp_iterations", cluster.grasp_iterations, int),
      INSIDER_NUMBER_FIELD("rcl_alpha", cluster.rcl_alpha, double),
      INSIDER_NUMBER_FIELD("oracle_bound", cluster.oracle_bound, int),
      INSIDER_STRING_FIELD("algorithm", algorithm),
      INSIDER_NUMBER_FIELD("eigen_tol", eigen_tol, double),
      INSIDER_NUMBER_FIELD("eigen_max_iter", eigen_max_iter, int),
      Field{"score_variants",
            [](PipelineConfig& c, const json& j) {
              const auto set = as_int_set(j, "score_variants");
              c.score_variants.assign(set.begin(), set.end());
            },
            [](const PipelineConfig& c) { return ordered_json(c.score_variants); }},
      INSIDER_BOOL_FIELD("centrality_outside_sum", centrality_outside_sum),
      INSIDER_STRING_FIELD("grid", grid),
      INSIDER_NUMBER_FIELD("threads", threads, int),
      INSIDER_STRING_FIELD("synth_mode", synth_mode),
      INSIDER_NUMBER_FIELD("synth_n_users", synth.n_users, int),
      INSIDER_NUMBER_FIELD("synth_k_clusters", synth.k_clusters, int),
      INSIDER_NUMBER_FIELD("synth_cluster_size_min", synth.cluster_size_min, int),
      INSIDER_NUMBER_FIELD("synth_cluster_size_max", synth.cluster_size_max, int),
      INSIDER_NUMBER_FIELD("synth_subspace_min", synth.subspace_min, int),
      INSIDER_NUMBER_FIELD("synth_subspace_max", synth.subspace_max, int),
      INSIDER_NUMBER_FIELD("synth_n_attributes", synth.n_attributes, int),
      INSIDER_NUMBER_FIELD("synth_p_in", synth.p_in, double),
      INSIDER_NUMBER_FIELD("synth_p_out", synth.p_out, double),
      INSIDER_NUMBER_FIELD("synth_width", synth.width, double),
      INSIDER_NUMBER_FIELD("synth_n_outliers", synth.n_outliers, int),
      INSIDER_NUMBER_FIELD("synth_outlier_gap", synth.outlier_gap, double),
      INSIDER_NUMBER_FIELD("synth_n_days", synth.n_days, int),
      INSIDER_STRING_FIELD("synth_start_date", synth.start_date),
      Field{"synth_after_hours_users",
            [](PipelineConfig& c, const json& j) {
              c.synth.after_hours_users = as_int_set(j, "synth_after_hours_users");
            },
            [](const PipelineConfig& c) { return ordered_json(c.synth.after_hours_users); }},
      Field{"synth_inactive_users",
            [](PipelineConfig& c, const json& j) {
              c.synth.inactive_users = as_int_set(j, "synth_inactive_users");
            },
            [](const PipelineConfig& c) { return ordered_json(c.synth.inactive_users); }},
  };
  return kFields;
}

#undef INSIDER_PATH_FIELD
#undef INSIDER_NUMBER_FIELD
#undef INSIDER_BOOL_FIELD
#undef INSIDER_STRING_FIELD

void set_field(PipelineConfig& config, const std::string& key, const json& value) {
  for (const auto& f : fields()) {
    if (key == f.key) {
      f.set(config, value);
      return;
    }
  }
  throw ConfigError("unknown config key '" + key + "'");
}

// ---------------------------------------------------------------------------
// Stage context

struct Context {
  const PipelineConfig& config;
  fs::path out;
  StageReport report;

  void time(const std::string& step, const std::function<void()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    const auto t1 = std::chrono::steady_clock::now();
    report.timings.push_back({step, std::chrono::duration<double>(t1 - t0).count()});
  }

  void input(const fs::path& p) { report.inputs.push_back(p); }

  // Writes `rel` under `dir` (default: the output directory).
  void write(const fs::path& rel, const std::function<void(std::ostream&)>& body,
             const fs::path& dir = {}) {
    const fs::path base = dir.empty() ? out : dir;
    const fs::path path = base / rel;
    fs::create_directories(path.parent_path());
    std::ofstream stream(path, std::ios::binary);
    if (!stream) throw Error("cannot write " + path.string());
    body(stream);
    stream.flush();
    if (!stream) throw Error("failed writing " + path.string());
    report.outputs.push_back(fs::relative(path, out).generic_string());
  }

  void warn(const std::string& message) { report.warnings.push_back(message); }
};

std::ifstream open_input(Context& ctx, const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInputError("cannot open " + path.string());
  ctx.input(path);
  return in;
}

void require_files(const std::vector<fs::path>& paths, const std::string& what) {
  std::string missing;
  for (const auto& p : paths) {
    if (!fs::exists(p)) {
      if (!missing.empty()) missing += ", ";
      missing += p.string();
    }
  }
  if (!missing.empty()) throw MissingInputError("missing " + what + ": " + missing);
}

fs::path graph_source(const PipelineConfig& c, const fs::path& out) {
  return c.graph_dir.empty() ? out : c.graph_dir;
}

fs::path ldap_source(const PipelineConfig& c) {
  return c.ldap_dir.empty() ? c.log_dir / "LDAP" : c.ldap_dir;
}

std::optional<fs::path> ground_truth_source(const PipelineConfig& c) {
  if (!c.ground_truth.empty()) return c.ground_truth;
  for (const auto& dir : {c.graph_dir, c.log_dir}) {
    if (!dir.empty() && fs::exists(dir / "ground_truth.txt")) return dir / "ground_truth.txt";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stages

void stage_ingest(Context& ctx) {
  const auto& c = ctx.config;
  if (c.log_dir.empty()) throw ConfigError("ingest needs log_dir");
  if (!fs::is_directory(c.log_dir)) {
    throw MissingInputError("missing log directory: " + c.log_dir.string());
  }
  const fs::path ldap = ldap_source(c);
  if (!fs::is_directory(ldap)) throw MissingInputError("missing LDAP directory: " + ldap.string());
  for (const char* ignored : {"http.csv", "psychometric.csv"}) {
    if (fs::exists(c.log_dir / ignored)) {
      ctx.warn(std::string(ignored) + " is present but not used by any feature");
    }
  }

  std::vector<Reject> rejects;
  std::map<LogKind, std::vector<LogEvent>> events;
  int found = 0;
  for (const auto& [kind, name] : kLogFiles) {
    const fs::path path = c.log_dir / (std::string(name) + ".csv");
    if (!fs::exists(path)) {
      ctx.warn(path.string() + " not found; treated as empty");
      events[kind];
      continue;
    }
    ++found;
    ctx.time(std::string("parse ") + name, [&] {
      ctx.input(path);
      auto parsed = parse_log_file(path, kind);
      rejects.insert(rejects.end(), parsed.rejects.begin(), parsed.rejects.end());
      events[kind] = std::move(parsed.events);
    });
  }
  if (found == 0) {
    throw MissingInputError("missing log files: none of logon/device/email/file.csv in " +
                            c.log_dir.string());
  }

  OrgDirectory directory;
  ctx.time("ldap", [&] {
    for (const auto& entry : fs::directory_iterator(ldap)) {
      if (entry.path().extension() == ".csv") ctx.input(entry.path());
    }
    std::sort(ctx.report.inputs.begin(), ctx.report.inputs.end());
    directory = load_ldap_snapshots(ldap);
  });

  ctx.time("write", [&] {
    for (const auto& [kind, name] : kLogFiles) {
      ctx.write(fs::path("ingest") / (std::string(name) + ".csv"),
                [&](std::ostream& o) { write_log_file(o, kind, events[kind]); });
    }
    ctx.write(fs::path("ingest") / "directory.csv",
              [&](std::ostream& o) { write_ldap_snapshot(o, directory.employees()); });
    ctx.write(fs::path("ingest") / "rejects.csv",
              [&](std::ostream& o) { write_rejects(o, rejects); });
  });
  if (!rejects.empty()) ctx.warn(std::to_string(rejects.size()) + " malformed log rows rejected");
}

struct IngestedData {
  OrgDirectory directory;
  std::vector<LogEvent> all_events;
  std::vector<LogEvent> email_events;
};

IngestedData load_ingested(Context& ctx) {
  const fs::path dir = ctx.out / "ingest";
  std::vector<fs::path> needed = {dir / "directory.csv"};
  for (const auto& [kind, name] : kLogFiles) needed.push_back(dir / (std::string(name) + ".csv"));
  require_files(needed, "ingest artifacts (run the ingest stage first)");

  IngestedData data;
  auto in = open_input(ctx, dir / "directory.csv");
  data.directory = merge_snapshots({parse_ldap_snapshot(in, "directory.csv")});
  for (const auto& [kind, name] : kLogFiles) {
    const fs::path path = dir / (std::string(name) + ".csv");
    ctx.input(path);
    auto parsed = parse_log_file(path, kind);
    if (kind == LogKind::kEmail) data.email_events = parsed.events;
    data.all_events.insert(data.all_events.end(), std::make_move_iterator(parsed.events.begin()),
                           std::make_move_iterator(parsed.events.end()));
  }
  return data;
}

FeatureOptions feature_options(const PipelineConfig& c) {
  FeatureOptions o;
  o.calendar = c.calendar;
  o.internal_domain = c.internal_domain;
  return o;
}

void stage_features(Context& ctx) {
  IngestedData data;
  ctx.time("load", [&] { data = load_ingested(ctx); });
  AttributeTable table;
  ctx.time("extract", [&] {
    table = extract_attributes(group_by_user(data.all_events), data.directory,
                               feature_options(ctx.config));
  });
  ctx.time("write", [&] {
    ctx.write("attributes.csv", [&](std::ostream& o) { write_attribute_csv(o, table); });
  });
}

void stage_graph(Context& ctx) {
  IngestedData data;
  AttributeTable table;
  ctx.time("load", [&] {
    data = load_ingested(ctx);
    require_files({ctx.out / "attributes.csv"}, "attribute table (run the features stage first)");
    auto in = open_input(ctx, ctx.out / "attributes.csv");
    table = read_attribute_csv(in, "attributes.csv");
  });
  if (table.users != data.directory.user_ids()) {
    throw DataError("attributes.csv rows do not match the directory's users");
  }
  GraphBuildResult built;
  ctx.time("build", [&] {
    Eigen::MatrixXd values =
        ctx.config.normalize ? normalize_matrix(table.values) : std::move(table.values);
    built = build_graph(data.directory, data.email_events, std::move(values), table.names,
                        GraphBuildOptions{ctx.config.internal_domain});
  });
  ctx.time("write", [&] {
    const auto& g = built.graph;
    ctx.write("nodes.csv", [&](std::ostream& o) {
      write_attribute_csv(o, AttributeTable{g.users(), g.attribute_names(), g.attributes()});
    });
    ctx.write("edges.csv", [&](std::ostream& o) { write_edges_csv(o, g); });
    ctx.write("graph_rejects.csv", [&](std::ostream& o) { write_rejects(o, built.rejects); });
    ctx.write("graph_summary.json", [&](std::ostream& o) {
      o << ordered_json{{"vertices", g.num_vertices()},
                        {"edges", g.num_edges()},
                        {"hierarchy_edges", built.hierarchy_edges},
                        {"email_edges", built.email_edges},
                        {"rejected_emails", built.rejects.size()}}
               .dump(2)
        << '\n';
    });
  });
}

AttributedGraph load_graph_artifacts(Context& ctx) {
  const fs::path dir = graph_source(ctx.config, ctx.out);
  require_files({dir / "nodes.csv", dir / "edges.csv"}, "graph artifacts");
  auto nodes = open_input(ctx, dir / "nodes.csv");
  auto edges = open_input(ctx, dir / "edges.csv");
  return load_graph(nodes, edges);
}

ClusterParams case_params(const PipelineConfig& c, const GridCase& gc) {
  ClusterParams p = c.cluster;
  p.n_min = gc.n_min;
  p.s_min = gc.s_min;
  return p;
}

struct CaseSummary {
  int clusters = 0;
  int clustered_users = 0;
};

CaseSummary run_cluster(Context& ctx, const AttributedGraph& graph, const ClusterParams& params,
                        const fs::path& case_dir) {
  ClusteringResult result;
  ctx.time("cluster " + case_dir.filename().generic_string(), [&] {
    if (ctx.config.algorithm == "exact") {
      result = enumerate_clusters_exact(graph, params);
    } else {
      result = grasp_cluster(graph, params, ctx.config.threads);
    }
  });
  ctx.write("clusters.jsonl", [&](std::ostream& o) { write_clusters_jsonl(o, result, graph); },
            case_dir);
  std::set<VertexId> members;
  for (const auto& c : result.clusters) members.insert(c.members.begin(), c.members.end());
  return {static_cast<int>(result.clusters.size()), static_cast<int>(members.size())};
}

void run_rank(Context& ctx, const AttributedGraph& graph, const CentralityTable& centralities,
              const fs::path& case_dir) {
  const fs::path path = case_dir / "clusters.jsonl";
  require_files({path}, "cluster artifacts (run the cluster stage first)");
  auto in = open_input(ctx, path);
  const ClusteringResult result = read_clusters_jsonl(in, graph);
  OutlierScoreTable table;
  ctx.time("score " + case_dir.filename().generic_string(), [&] {
    table = compute_scores(result, centralities, graph,
                           ScoreOptions{ctx.config.centrality_outside_sum});
  });
  ctx.write("scores.csv", [&](std::ostream& o) { write_scores_csv(o, table); }, case_dir);
  for (int v : ctx.config.score_variants) {
    ctx.write("ranking." + std::to_string(v) + ".csv",
              [&](std::ostream& o) { write_ranking_csv(o, table, v); }, case_dir);
  }
}

CentralityTable run_centrality(Context& ctx, const AttributedGraph& graph) {
  CentralityTable t;
  ctx.time("centrality", [&] {
    t = compute_centralities(graph, ctx.config.eigen_tol, ctx.config.eigen_max_iter,
                             ctx.config.threads);
  });
  ctx.write("centrality.csv", [&](std::ostream& o) { write_centrality_csv(o, graph, t); });
  return t;
}

GroundTruth load_truth(Context& ctx) {
  const auto path = ground_truth_source(ctx.config);
  if (!path || !fs::exists(*path)) {
    throw MissingInputError("missing ground truth: set ground_truth or provide ground_truth.txt" +
                            (path ? " (" + path->string() + ")" : std::string()));
  }
  ctx.input(*path);
  return read_ground_truth(*path);
}

AucCase run_eval(Context& ctx, const GroundTruth& truth, const GridCase& gc,
                 const std::string& label, const fs::path& case_dir) {
  const fs::path path = case_dir / "scores.csv";
  require_files({path}, "score artifacts (run the rank stage first)");
  auto in = open_input(ctx, path);
  const OutlierScoreTable table = read_scores_csv(in);
  const auto labels = label_users(table.users, truth);
  AucCase row;
  row.label = label;
  row.n_min = gc.n_min;
  row.s_min = gc.s_min;
  for (int v = 1; v <= kScoreVariants; ++v) {
    std::vector<double> scores(table.users.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
      scores[i] = table.scores(static_cast<Eigen::Index>(i), v - 1);
    }
    const RocCurve curve = roc_auc(scores, labels);
    row.auc[static_cast<std::size_t>(v - 1)] = curve.auc;
    if (std::find(ctx.config.score_variants.begin(), ctx.config.score_variants.end(), v) ==
        ctx.config.score_variants.end()) {
      continue;
    }
    ctx.write("roc." + std::to_string(v) + ".csv",
              [&](std::ostream& o) { write_roc_csv(o, curve); }, case_dir);
    ctx.write("distribution." + std::to_string(v) + ".csv",
              [&](std::ostream& o) { write_distribution_csv(o, score_distribution(table, v)); },
              case_dir);
  }
  return row;
}

GridCase single_case(const PipelineConfig& c) { return {c.cluster.n_min, c.cluster.s_min}; }

void warn_grid_ignored(Context& ctx) {
  if (!ctx.config.grid.empty()) ctx.warn("grid is only used by the pipeline stage; ignored");
}

void stage_cluster(Context& ctx) {
  warn_grid_ignored(ctx);
  AttributedGraph graph;
  ctx.time("load", [&] { graph = load_graph_artifacts(ctx); });
  run_cluster(ctx, graph, ctx.config.cluster, ctx.out);
}

void stage_rank(Context& ctx) {
  warn_grid_ignored(ctx);
  AttributedGraph graph;
  ctx.time("load", [&] { graph = load_graph_artifacts(ctx); });
  const CentralityTable centralities = run_centrality(ctx, graph);
  run_rank(ctx, graph, centralities, ctx.out);
}

void stage_eval(Context& ctx) {
  warn_grid_ignored(ctx);
  const GroundTruth truth = load_truth(ctx);
  const AucCase row = run_eval(ctx, truth, single_case(ctx.config), case_label(0), ctx.out);
  ctx.write("auc_summary.csv", [&](std::ostream& o) { write_auc_summary(o, {row}); });
}

void stage_synth(Context& ctx) {
  const auto& c = ctx.config;
  if (c.synth_mode == "graph") {
    SynthGraph g;
    ctx.time("generate", [&] { g = generate_attributed_graph(c.synth); });
    ctx.write("nodes.csv", [&](std::ostream& o) {
      write_attribute_csv(
          o, AttributeTable{g.graph.users(), g.graph.attribute_names(), g.graph.attributes()});
    });
    ctx.write("edges.csv", [&](std::ostream& o) { write_edges_csv(o, g.graph); });
    ctx.write("ground_truth.txt", [&](std::ostream& o) { write_ground_truth(o, g.truth); });
    ctx.write("planted.jsonl", [&](std::ostream& o) {
      ClusteringResult planted = make_result(g.planted, ClusterParams{});
      write_clusters_jsonl(o, planted, g.graph);
    });
  } else {
    ctx.time("generate", [&] { generate_logs(c.synth, c.calendar, ctx.out); });
    for (const char* f : {"logon.csv", "device.csv", "email.csv", "file.csv", "ground_truth.txt"}) {
      ctx.report.outputs.emplace_back(f);
    }
    const std::string month = c.synth.start_date.substr(6, 4) + "-" + c.synth.start_date.substr(0, 2);
    ctx.report.outputs.push_back("LDAP/" + month + ".csv");
  }
}

void stage_pipeline(Context& ctx) {
  const auto& c = ctx.config;
  if (c.graph_dir.empty()) {
    if (c.log_dir.empty()) throw ConfigError("pipeline needs log_dir or graph_dir");
    stage_ingest(ctx);
    stage_features(ctx);
    stage_graph(ctx);
  }
  AttributedGraph graph;
  ctx.time("load graph", [&] { graph = load_graph_artifacts(ctx); });
  const CentralityTable centralities = run_centrality(ctx, graph);

  std::optional<GroundTruth> truth;
  if (ground_truth_source(c)) {
    truth = load_truth(ctx);
  } else {
    ctx.warn("no ground truth found; eval skipped");
  }

  const bool gridded = !c.grid.empty();
  const auto cases = gridded ? parse_grid(c.grid, c.cluster.n_min, c.cluster.s_min)
                             : std::vector<GridCase>{single_case(c)};
  std::vector<AucCase> rows;
  std::vector<std::pair<std::string, CaseSummary>> summaries;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const std::string label = case_label(i);
    const fs::path dir = gridded ? ctx.out / ("case_" + label) : ctx.out;
    const CaseSummary summary = run_cluster(ctx, graph, case_params(c, cases[i]), dir);
    summaries.emplace_back(label, summary);
    run_rank(ctx, graph, centralities, dir);
    if (truth) rows.push_back(run_eval(ctx, *truth, cases[i], label, dir));
  }
  if (truth) ctx.write("auc_summary.csv", [&](std::ostream& o) { write_auc_summary(o, rows); });
  ctx.write("cluster_summary.csv", [&](std::ostream& o) {
    o << "case,n_min,s_min,clusters,clustered_users\n";
    for (std::size_t i = 0; i < cases.size(); ++i) {
      o << summaries[i].first << ',' << cases[i].n_min << ',' << cases[i].s_min << ','
        << summaries[i].second.clusters << ',' << summaries[i].second.clustered_users << '\n';
    }
  });
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(Stage stage, const PipelineConfig& config, const fs::path& out,
                    const StageReport& report, double total_seconds, const std::string& started) {
  ordered_json inputs = ordered_json::array();
  std::set<fs::path> seen;
  for (const auto& p : report.inputs) {
    if (!seen.insert(p).second) continue;
    inputs.push_back({{"path", p.generic_string()},
                      {"sha256", sha256_file(p)},
                      {"bytes", fs::file_size(p)}});
  }
  ordered_json timings = ordered_json::array();
  for (const auto& t : report.timings) timings.push_back({{"step", t.step}, {"seconds", t.seconds}});
  ordered_json manifest = {{"tool", kToolVersion},
                           {"stage", to_string(stage)},
                           {"started_at", started},
                           {"seed", config.cluster.rng_seed},
                           {"threads", config.threads},
                           {"config", config.to_json()},
                           {"inputs", inputs},
                           {"outputs", report.outputs},
                           {"warnings", report.warnings},
                           {"timings", timings},
                           {"total_seconds", total_seconds}};
  std::ofstream o(out / ("manifest." + std::string(to_string(stage)) + ".json"),
                  std::ios::binary);
  o << manifest.dump(2) << '\n';
  if (!o) throw Error("failed writing manifest in " + out.string());
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kIngest: return "ingest";
    case Stage::kFeatures: return "features";
    case Stage::kGraph: return "graph";
    case Stage::kCluster: return "cluster";
    case Stage::kRank: return "rank";
    case Stage::kEval: return "eval";
    case Stage::kSynth: return "synth";
    case Stage::kPipeline: return "pipeline";
  }
  return "unknown";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (Stage s : {Stage::kIngest, Stage::kFeatures, Stage::kGraph, Stage::kCluster, Stage::kRank,
                  Stage::kEval, Stage::kSynth, Stage::kPipeline}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::vector<GridCase> parse_grid(std::string_view text, int default_n_min, int default_s_min) {
  std::map<std::string, std::vector<int>> axes = {{"n_min", {default_n_min}},
                                                  {"s_min", {default_s_min}}};
  for (const auto& part : split(text, ';')) {
    const auto clause = std::string(trim(part));
    if (clause.empty()) continue;
    const auto eq = clause.find('=');
    if (eq == std::string::npos) throw ConfigError("grid clause '" + clause + "' lacks '='");
    const std::string key(trim(std::string_view(clause).substr(0, eq)));
    if (!axes.count(key)) throw ConfigError("grid key must be n_min or s_min, got '" + key + "'");
    std::vector<int> values;
    for (const auto& item : split(std::string_view(clause).substr(eq + 1), ',')) {
      const auto token = std::string(trim(item));
      const auto dots = token.find("..");
      if (dots != std::string::npos) {
        const auto lo = parse_int(token.substr(0, dots));
        const auto hi = parse_int(token.substr(dots + 2));
        if (!lo || !hi || *lo > *hi) throw ConfigError("bad grid range '" + token + "'");
        for (auto v = *lo; v <= *hi; ++v) values.push_back(static_cast<int>(v));
      } else {
        const auto v = parse_int(token);
        if (!v) throw ConfigError("bad grid value '" + token + "'");
        values.push_back(static_cast<int>(*v));
      }
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    axes[key] = values;
  }
  std::vector<GridCase> cases;
  for (int s : axes["s_min"]) {
    for (int n : axes["n_min"]) cases.push_back({n, s});
  }
  return cases;
}

void PipelineConfig::validate() const {
  calendar.validate();
  cluster.validate();
  if (algorithm != "grasp" && algorithm != "exact") {
    throw ConfigError("algorithm must be \"grasp\" or \"exact\", got \"" + algorithm + "\"");
  }
  if (!(eigen_tol > 0)) throw ConfigError("eigen_tol must be positive");
  if (eigen_max_iter < 1) throw ConfigError("eigen_max_iter must be positive");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (score_variants.empty()) throw ConfigError("score_variants must not be empty");
  for (int v : score_variants) {
    if (v < 1 || v > kScoreVariants) throw ConfigError("score_variants entries must be in 1..6");
  }
  if (synth_mode != "graph" && synth_mode != "logs") {
    throw ConfigError("synth_mode must be \"graph\" or \"logs\"");
  }
  if (!grid.empty()) {
    for (const auto& gc : parse_grid(grid, cluster.n_min, cluster.s_min)) {
      case_params(*this, gc).validate();
    }
  }
}

nlohmann::ordered_json PipelineConfig::to_json() const {
  ordered_json j = ordered_json::object();
  for (const auto& f : fields()) j[f.key] = f.get(*this);
  return j;
}

PipelineConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  PipelineConfig config;
  for (const auto& [key, value] : j.items()) set_field(config, key, value);
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingInputError("missing config file: " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

void apply_override(PipelineConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' must be key=value");
  }
  const std::string key(trim(assignment.substr(0, eq)));
  const std::string text(trim(assignment.substr(eq + 1)));
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;
  set_field(config, key, value);
}

StageReport run_stage(Stage stage, const PipelineConfig& config) {
  config.validate();
  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  Context ctx{config, config.output_dir, {}};
  fs::create_directories(ctx.out);
  switch (stage) {
    case Stage::kIngest: stage_ingest(ctx); break;
    case Stage::kFeatures: stage_features(ctx); break;
    case Stage::kGraph: stage_graph(ctx); break;
    case Stage::kCluster: stage_cluster(ctx); break;
    case Stage::kRank: stage_rank(ctx); break;
    case Stage::kEval: stage_eval(ctx); break;
    case Stage::kSynth: stage_synth(ctx); break;
    case Stage::kPipeline: stage_pipeline(ctx); break;
  }
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(stage, config, ctx.out, ctx.report, total, started);
  return std::move(ctx.report);
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const MissingInputError*>(&e)) return 3;
  if (dynamic_cast<const SchemaError*>(&e) || dynamic_cast<const DataError*>(&e)) return 4;
  if (dynamic_cast<const OracleBoundError*>(&e)) return 5;
  if (dynamic_cast<const ConvergenceError*>(&e)) return 6;
  return 1;
}

std::string diagnostic_for(const std::exception& e) {
  std::string kind = "error";
  if (dynamic_cast<const ConfigError*>(&e)) {
    kind = "invalid config";
  } else if (dynamic_cast<const MissingInputError*>(&e)) {
    kind = "missing input";
  } else if (dynamic_cast<const SchemaError*>(&e)) {
    kind = "schema error";
  } else if (dynamic_cast<const DataError*>(&e)) {
    kind = "data error";
  } else if (dynamic_cast<const OracleBoundError*>(&e)) {
    kind = "oracle bound exceeded";
  } else if (dynamic_cast<const ConvergenceError*>(&e)) {
    kind = "no convergence";
  }
  return kind + ": " + e.what();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingInputError("cannot hash " + path.string());
  EVP_MD_CTX* md = EVP_MD_CTX_new();
  if (md == nullptr || EVP_DigestInit_ex(md, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(md);
    throw Error("SHA-256 unavailable");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(md, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(md, digest.data(), &len);
  EVP_MD_CTX_free(md);
  std::string hex;
  static const char* kHex = "0123456789abcdef";
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 15];
  }
  return hex;
}

}  // namespace insider
