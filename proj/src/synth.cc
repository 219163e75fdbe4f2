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

#include "insider/synth.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "insider/error.h"
#include "insider/parallel.h"
#include "insider/text.h"

namespace insider {
namespace {

constexpr int kMaxLogUsers = 200;
constexpr int kMaxLogDays = 60;

// Substream indices; one per independent decision family.
enum Stream : std::uint64_t {
  kSizes = 1,
  kPermutation,
  kSubspaces,
  kValues,
  kEdges,
  kPin,
  kProfiles,
  kActivity,
};

std::string padded(const char* prefix, int i, int width = 4) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, width, i);
  return buf;
}

std::string user_id(int v) { return padded("U", v); }

// First `k` entries of a seeded Fisher-Yates shuffle of 0..n-1.
std::vector<int> sample_without_replacement(int n, int k, std::mt19937_64& rng) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < k; ++i) {
    const auto j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

struct Layout {
  std::vector<std::vector<VertexId>> groups;  // sorted members
  std::vector<std::pair<VertexId, int>> outliers;
  std::vector<VertexId> background;
  std::vector<int> group_of;  // -1 for background, host group for outliers
  std::vector<bool> is_outlier;
};

Layout plan_layout(const SynthSpec& spec) {
  const int n = spec.n_users;
  const int k = spec.k_clusters;
  auto size_rng = substream(spec.rng_seed, kSizes);
  std::vector<int> sizes;
  int available = n - spec.n_outliers;
  for (int g = 0; g < k; ++g) {
    const int span = spec.cluster_size_max - spec.cluster_size_min + 1;
    int size = spec.cluster_size_min +
               static_cast<int>(uniform_below(size_rng, static_cast<std::uint64_t>(span)));
    size = std::min(size, available - (k - g - 1) * spec.cluster_size_min);
    sizes.push_back(size);
    available -= size;
  }

  auto perm_rng = substream(spec.rng_seed, kPermutation);
  const std::vector<int> perm = sample_without_replacement(n, n, perm_rng);

  Layout layout;
  layout.group_of.assign(static_cast<std::size_t>(n), -1);
  layout.is_outlier.assign(static_cast<std::size_t>(n), false);
  std::size_t slot = 0;
  for (int g = 0; g < k; ++g) {
    std::vector<VertexId> members;
    for (int i = 0; i < sizes[static_cast<std::size_t>(g)]; ++i) {
      const VertexId v = perm[slot++];
      members.push_back(v);
      layout.group_of[static_cast<std::size_t>(v)] = g;
    }
    std::sort(members.begin(), members.end());
    layout.groups.push_back(std::move(members));
  }
  for (int i = 0; i < spec.n_outliers; ++i) {
    const VertexId v = perm[slot++];
    layout.outliers.emplace_back(v, i % k);
    layout.group_of[static_cast<std::size_t>(v)] = i % k;
    layout.is_outlier[static_cast<std::size_t>(v)] = true;
  }
  for (; slot < perm.size(); ++slot) layout.background.push_back(perm[slot]);
  std::sort(layout.outliers.begin(), layout.outliers.end());
  std::sort(layout.background.begin(), layout.background.end());
  return layout;
}

// Edges at p_in inside group-plus-outliers and p_out elsewhere, then the
// gamma repair over each group's members.
std::vector<Edge> draw_edges(const SynthSpec& spec, const Layout& layout) {
  const int n = spec.n_users;
  auto rng = substream(spec.rng_seed, kEdges);
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n),
                                     std::vector<bool>(static_cast<std::size_t>(n), false));
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      const int gu = layout.group_of[static_cast<std::size_t>(u)];
      const int gv = layout.group_of[static_cast<std::size_t>(v)];
      // Outlier pairs sharing a host are wired at p_out.
      const bool both_outliers = layout.is_outlier[static_cast<std::size_t>(u)] &&
                                 layout.is_outlier[static_cast<std::size_t>(v)];
      const double p = (gu >= 0 && gu == gv && !both_outliers) ? spec.p_in : spec.p_out;
      if (uniform01(rng) < p) {
        adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
        adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = true;
      }
    }
  }

  for (const auto& members : layout.groups) {
    const int need = required_degree(static_cast<int>(members.size()), kPlantedGamma);
    auto inner_degree = [&](VertexId v) {
      int d = 0;
      for (VertexId w : members) d += adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)];
      return d;
    };
    while (true) {
      VertexId sparsest = -1;
      int lowest = need;
      for (VertexId v : members) {
        const int d = inner_degree(v);
        if (d < lowest) {
          lowest = d;
          sparsest = v;
        }
      }
      if (sparsest < 0) break;
      for (VertexId w : members) {
        if (w != sparsest &&
            !adj[static_cast<std::size_t>(sparsest)][static_cast<std::size_t>(w)]) {
          adj[static_cast<std::size_t>(sparsest)][static_cast<std::size_t>(w)] = true;
          adj[static_cast<std::size_t>(w)][static_cast<std::size_t>(sparsest)] = true;
          break;
        }
      }
    }
  }

  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) edges.emplace_back(u, v);
    }
  }
  return edges;
}

void self_check(const SynthGraph& synth, const SynthSpec& spec) {
  const auto& x = synth.graph.attributes();
  for (const auto& c : synth.planted) {
    if (c.gamma < kPlantedGamma) {
      throw std::logic_error("planted cluster below the gamma bound");
    }
    if (!is_connected_subgraph(synth.graph, c.members)) {
      throw std::logic_error("planted cluster is disconnected");
    }
    for (int a : c.subspace) {
      double lo = x(c.members.front(), a);
      double hi = lo;
      for (VertexId v : c.members) {
        lo = std::min(lo, x(v, a));
        hi = std::max(hi, x(v, a));
      }
      if (hi - lo > spec.width) throw std::logic_error("planted subspace wider than width");
    }
  }
  for (const auto& [v, host] : synth.outlier_hosts) {
    const auto& c = synth.planted[static_cast<std::size_t>(host)];
    for (int a : c.subspace) {
      double lo = x(v, a);
      double hi = lo;
      for (VertexId u : c.members) {
        lo = std::min(lo, x(u, a));
        hi = std::max(hi, x(u, a));
      }
      if (hi - lo <= spec.width) {
        throw std::logic_error("outlier " + synth.graph.user(v) + " fits its host subspace");
      }
    }
  }
}

}  // namespace

void SynthSpec::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("synth: " + what); };
  if (n_users < 1) fail("n_users must be positive");
  if (k_clusters < 0) fail("k_clusters must be non-negative");
  if (n_attributes < 1) fail("n_attributes must be positive");
  if (!(p_in >= 0 && p_in <= 1 && p_out >= 0 && p_out <= 1)) fail("probabilities must lie in [0, 1]");
  if (!(p_in > p_out)) fail("p_in must exceed p_out");
  if (!(width > 0 && width < 1)) fail("width must lie in (0, 1)");
  if (!(outlier_gap > 0) || 2 * outlier_gap + width > 1) {
    fail("outlier_gap must be positive with 2 * outlier_gap + width <= 1");
  }
  if (n_outliers < 0 || n_outliers > n_users) fail("n_outliers must lie in [0, n_users]");
  if (n_outliers > 0 && k_clusters == 0) fail("outliers need at least one host cluster");
  if (k_clusters > 0) {
    if (cluster_size_min < 2 || cluster_size_min > cluster_size_max) {
      fail("cluster size range must satisfy 2 <= min <= max");
    }
    if (subspace_min < 1 || subspace_min > subspace_max || subspace_max > n_attributes) {
      fail("subspace range must satisfy 1 <= min <= max <= n_attributes");
    }
    if (static_cast<long long>(k_clusters) * cluster_size_min + n_outliers > n_users) {
      fail("k_clusters * cluster_size_min + n_outliers exceeds n_users");
    }
  }
  if (n_days < 1) fail("n_days must be positive");
  if (!parse_timestamp(start_date + " 00:00:00")) fail("start_date must be MM/DD/YYYY");
  for (int v : after_hours_users) {
    if (v < 0 || v >= n_users) fail("after_hours_users index out of range");
  }
  for (int v : inactive_users) {
    if (v < 0 || v >= n_users) fail("inactive_users index out of range");
  }
}

SynthGraph generate_attributed_graph(const SynthSpec& spec) {
  spec.validate();
  const int n = spec.n_users;
  const int d = spec.n_attributes;
  const Layout layout = plan_layout(spec);

  auto sub_rng = substream(spec.rng_seed, kSubspaces);
  std::vector<std::vector<int>> subspaces;
  for (std::size_t g = 0; g < layout.groups.size(); ++g) {
    const int span = spec.subspace_max - spec.subspace_min + 1;
    const int dims =
        spec.subspace_min + static_cast<int>(uniform_below(sub_rng, static_cast<std::uint64_t>(span)));
    auto s = sample_without_replacement(d, dims, sub_rng);
    std::sort(s.begin(), s.end());
    subspaces.push_back(std::move(s));
  }

  // Uniform noise, then the coherent and deviating cells.
  auto value_rng = substream(spec.rng_seed, kValues);
  Eigen::MatrixXd x(n, d);
  for (int v = 0; v < n; ++v) {
    for (int a = 0; a < d; ++a) x(v, a) = uniform01(value_rng);
  }
  std::vector<std::vector<bool>> constrained(static_cast<std::size_t>(n),
                                             std::vector<bool>(static_cast<std::size_t>(d), false));
  for (std::size_t g = 0; g < layout.groups.size(); ++g) {
    for (int a : subspaces[g]) {
      const double lo = uniform_in(value_rng, 0.0, 1.0 - spec.width);
      for (VertexId v : layout.groups[g]) {
        x(v, a) = lo + spec.width * uniform01(value_rng);
        constrained[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)] = true;
      }
      for (const auto& [v, host] : layout.outliers) {
        if (host != static_cast<int>(g)) continue;
        const bool can_low = lo - spec.outlier_gap >= 0;
        const bool can_high = lo + spec.width + spec.outlier_gap <= 1;
        const bool low = can_low && (!can_high || uniform01(value_rng) < 0.5);
        x(v, a) = low ? uniform_in(value_rng, 0.0, lo - spec.outlier_gap)
                      : uniform_in(value_rng, lo + spec.width + spec.outlier_gap, 1.0);
        constrained[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)] = true;
      }
    }
  }

  // Pin each column's span to [0, 1] through its extreme free cells.
  for (int a = 0; a < d; ++a) {
    VertexId arg_lo = -1;
    VertexId arg_hi = -1;
    for (VertexId v = 0; v < n; ++v) {
      if (constrained[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)]) continue;
      if (arg_lo < 0 || x(v, a) < x(arg_lo, a)) arg_lo = v;
      if (arg_hi < 0 || x(v, a) > x(arg_hi, a)) arg_hi = v;
    }
    if (arg_lo >= 0 && arg_hi >= 0 && arg_lo != arg_hi) {
      x(arg_lo, a) = 0.0;
      x(arg_hi, a) = 1.0;
    }
  }

  std::vector<std::string> users;
  for (int v = 0; v < n; ++v) users.push_back(user_id(v));
  std::vector<std::string> names;
  for (int a = 0; a < d; ++a) names.push_back(padded("attr_", a, 2));

  SynthGraph synth;
  synth.graph = AttributedGraph(users, draw_edges(spec, layout), std::move(x), std::move(names));
  ClusterParams defaults;
  for (std::size_t g = 0; g < layout.groups.size(); ++g) {
    TwofoldCluster c;
    c.members = layout.groups[g];
    c.subspace = subspaces[g];
    c.gamma = quasi_clique_gamma(synth.graph, c.members);
    c.quality = cluster_quality(static_cast<double>(c.members.size()),
                                static_cast<double>(c.subspace.size()), c.gamma, defaults);
    synth.planted.push_back(std::move(c));
  }
  synth.outlier_hosts = layout.outliers;
  for (const auto& [v, host] : layout.outliers) synth.truth.insert(user_id(v));
  self_check(synth, spec);
  return synth;
}

void write_synth_graph(const SynthGraph& synth, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  AttributeTable table{synth.graph.users(), synth.graph.attribute_names(),
                       synth.graph.attributes()};
  std::ofstream nodes(dir / "nodes.csv", std::ios::binary);
  write_attribute_csv(nodes, table);
  std::ofstream edges(dir / "edges.csv", std::ios::binary);
  write_edges_csv(edges, synth.graph);
  std::ofstream truth(dir / "ground_truth.txt", std::ios::binary);
  write_ground_truth(truth, synth.truth);
  if (!nodes || !edges || !truth) throw Error("failed writing synthetic graph to " + dir.string());
}

namespace {

// Daily behaviour shared by a planted group (or owned by one background
// user). Hours are decimal.
struct Profile {
  double logon_hour = 8.5;
  double logoff_hour = 16.5;
  int sessions = 1;
  double devices_per_day = 0;
  double files_per_device = 0;
  double emails_per_day = 1;
  double mail_kb = 20;
  int file_type = 0;
  std::string role;
  std::string unit;
  std::string department;
  std::string team;
};

Profile draw_profile(std::mt19937_64& rng, const CalendarConfig& cal) {
  const double bs = static_cast<double>(cal.business_start.count()) / 60.0;
  const double be = static_cast<double>(cal.business_end.count()) / 60.0;
  const double slack = std::min(1.5, (be - bs) / 4.0);
  static const char* kRoles[] = {"Engineer", "Analyst", "Salesman", "Technician", "Manager"};
  Profile p;
  p.logon_hour = uniform_in(rng, bs + 0.1 * slack, bs + slack);
  p.logoff_hour = uniform_in(rng, be - slack, be - 0.1 * slack);
  p.sessions = 1 + static_cast<int>(uniform_below(rng, 2));
  p.devices_per_day = uniform_in(rng, 0.0, 3.0);
  p.files_per_device = uniform_in(rng, 0.0, 4.0);
  p.emails_per_day = uniform_in(rng, 1.0, 6.0);
  p.mail_kb = uniform_in(rng, 10.0, 60.0);
  p.file_type = static_cast<int>(uniform_below(rng, kFileTypes.size()));
  p.role = kRoles[uniform_below(rng, 5)];
  return p;
}

int draw_count(std::mt19937_64& rng, double mean) {
  return static_cast<int>(std::floor(mean + uniform01(rng)));
}

Timestamp at(std::chrono::sys_days day, double hour) {
  const auto secs = std::clamp(static_cast<long long>(std::llround(hour * 3600.0)), 0LL, 86399LL);
  return Timestamp(day) + std::chrono::seconds(secs);
}

struct EventSink {
  std::vector<LogEvent> logon, device, email, file;
};

void sort_and_number(std::vector<LogEvent>& events, const char* prefix) {
  std::stable_sort(events.begin(), events.end(), [](const LogEvent& a, const LogEvent& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.user < b.user;
  });
  for (std::size_t i = 0; i < events.size(); ++i) {
    events[i].event_id = padded(prefix, static_cast<int>(i), 8);
  }
}

}  // namespace

SynthLogs generate_logs(const SynthSpec& spec, const CalendarConfig& calendar,
                        const std::filesystem::path& dir) {
  spec.validate();
  calendar.validate();
  if (spec.n_users > kMaxLogUsers) {
    throw ConfigError("synth logs support at most " + std::to_string(kMaxLogUsers) + " users");
  }
  if (spec.n_days > kMaxLogDays) {
    throw ConfigError("synth logs support at most " + std::to_string(kMaxLogDays) + " days");
  }
  const SynthGraph topo = generate_attributed_graph(spec);
  const Layout layout = plan_layout(spec);
  const int n = spec.n_users;
  const double be = static_cast<double>(calendar.business_end.count()) / 60.0;

  // Profiles: one per group, one per background user; outliers inherit
  // their host's profile but work a late shift.
  auto prof_rng = substream(spec.rng_seed, kProfiles);
  std::vector<Profile> group_profiles;
  for (std::size_t g = 0; g < layout.groups.size(); ++g) {
    Profile p = draw_profile(prof_rng, calendar);
    p.unit = padded("FU", static_cast<int>(g), 2);
    p.department = padded("Dept", static_cast<int>(g), 2);
    p.team = padded("Team", static_cast<int>(g), 2);
    group_profiles.push_back(std::move(p));
  }
  std::vector<Profile> profiles(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) {
    const int g = layout.group_of[static_cast<std::size_t>(v)];
    if (g >= 0) {
      profiles[static_cast<std::size_t>(v)] = group_profiles[static_cast<std::size_t>(g)];
    } else {
      Profile p = draw_profile(prof_rng, calendar);
      p.unit = "FU-General";
      p.department = "Dept-General";
      p.team = padded("Team-G", static_cast<int>(uniform_below(prof_rng, 5)), 1);
      profiles[static_cast<std::size_t>(v)] = std::move(p);
    }
  }
  for (const auto& [v, host] : layout.outliers) {
    auto& p = profiles[static_cast<std::size_t>(v)];
    p.logon_hour = std::min(be + 1.0 + uniform01(prof_rng), 22.0);
    p.logoff_hour = std::min(p.logon_hour + 1.5, 23.9);
    p.sessions = 1;
    p.devices_per_day += 2.0;
  }

  // Organization: group leader = lowest member id; root = lowest
  // background id, else the first group's leader.
  const VertexId root = !layout.background.empty() ? layout.background.front()
                                                   : layout.groups.front().front();
  std::vector<std::optional<VertexId>> boss(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) {
    const int g = layout.group_of[static_cast<std::size_t>(v)];
    const VertexId leader = g >= 0 ? layout.groups[static_cast<std::size_t>(g)].front() : root;
    if (v == root) continue;
    boss[static_cast<std::size_t>(v)] = v == leader ? root : leader;
  }
  std::vector<Employee> employees;
  auto email_of = [&](VertexId v) {
    return to_lower(user_id(v)) + "@" + spec.internal_domain;
  };
  for (VertexId v = 0; v < n; ++v) {
    const auto& p = profiles[static_cast<std::size_t>(v)];
    Employee e;
    e.user_id = user_id(v);
    e.employee_name = padded("Employee ", v);
    e.email = email_of(v);
    e.role = p.role;
    e.functional_unit = p.unit;
    e.department = p.department;
    e.team = p.team;
    if (const auto b = boss[static_cast<std::size_t>(v)]) e.supervisor = user_id(*b);
    employees.push_back(std::move(e));
  }

  const auto start = parse_timestamp(spec.start_date + " 00:00:00");
  const auto first_day = std::chrono::floor<std::chrono::days>(*start);
  auto rng = substream(spec.rng_seed, kActivity);
  EventSink sink;
  for (int day = 0; day < spec.n_days; ++day) {
    const std::chrono::sys_days date = first_day + std::chrono::days(day);
    const bool workday = calendar.business_days[std::chrono::weekday(date).c_encoding()];
    for (VertexId v = 0; v < n; ++v) {
      if (spec.inactive_users.count(v)) continue;
      const auto& p = profiles[static_cast<std::size_t>(v)];
      const std::string uid = user_id(v);
      const std::string pc = padded("PC-", v);
      const bool night_owl = spec.after_hours_users.count(v) > 0;
      if (night_owl) {
        for (int i = 0; i < 3; ++i) {
          const double h = std::min(be + 1.5 + i + uniform01(rng) * 0.5, 23.5);
          sink.logon.push_back({"", at(date, h), uid, pc, EventKind::kLogon, {}});
          sink.logon.push_back({"", at(date, h + 0.25), uid, pc, EventKind::kLogoff, {}});
        }
      }
      if (!workday) continue;

      const double length = (p.logoff_hour - p.logon_hour) / p.sessions;
      for (int s = 0; s < p.sessions; ++s) {
        const double on = p.logon_hour + s * length + uniform_in(rng, -0.1, 0.1);
        const double off = p.logon_hour + (s + 1) * length - 0.2 + uniform_in(rng, -0.1, 0.1);
        sink.logon.push_back({"", at(date, on), uid, pc, EventKind::kLogon, {}});
        sink.logon.push_back({"", at(date, off), uid, pc, EventKind::kLogoff, {}});
      }
      const double lo = p.logon_hour + 0.1;
      const double hi = std::max(lo, p.logoff_hour - 0.3);

      const int devices = draw_count(rng, p.devices_per_day);
      for (int i = 0; i < devices; ++i) {
        const double connect = uniform_in(rng, lo, hi);
        const double disconnect = std::min(connect + uniform_in(rng, 0.05, 0.2), 23.99);
        sink.device.push_back({"", at(date, connect), uid, pc, EventKind::kDeviceConnect, {}});
        sink.device.push_back(
            {"", at(date, disconnect), uid, pc, EventKind::kDeviceDisconnect, {}});
        const int copies = draw_count(rng, p.files_per_device);
        for (int f = 0; f < copies; ++f) {
          const auto type = uniform01(rng) < 0.7
                                ? static_cast<std::size_t>(p.file_type)
                                : static_cast<std::size_t>(uniform_below(rng, kFileTypes.size()));
          FilePayload file{padded("R:\\share\\file", static_cast<int>(uniform_below(rng, 10000))) +
                           "." + kFileTypes[type]};
          sink.file.push_back({"", at(date, uniform_in(rng, connect, disconnect)), uid, pc,
                               EventKind::kFileCopy, std::move(file)});
        }
      }

      const auto nbrs = topo.graph.neighbors(v);
      const int mails = draw_count(rng, p.emails_per_day);
      for (int i = 0; i < mails; ++i) {
        EmailPayload mail;
        mail.from = email_of(v);
        if (nbrs.empty()) {
          mail.to.push_back(padded("contact", static_cast<int>(uniform_below(rng, 50))) +
                            "@example.com");
        } else {
          const auto first = nbrs[uniform_below(rng, nbrs.size())];
          mail.to.push_back(email_of(first));
          if (nbrs.size() > 1 && uniform01(rng) < 0.3) {
            const auto second = nbrs[uniform_below(rng, nbrs.size())];
            if (second != first) mail.to.push_back(email_of(second));
          }
          if (uniform01(rng) < 0.2) {
            mail.cc.push_back(email_of(nbrs[uniform_below(rng, nbrs.size())]));
          }
        }
        if (uniform01(rng) < 0.1) {
          mail.bcc.push_back(padded("contact", static_cast<int>(uniform_below(rng, 50))) +
                             "@example.com");
        }
        mail.size_bytes = static_cast<std::int64_t>(p.mail_kb * 1024.0 * uniform_in(rng, 0.8, 1.2));
        mail.attachments = static_cast<int>(uniform_below(rng, 3));
        sink.email.push_back({"", at(date, uniform_in(rng, lo, hi)), uid, pc, EventKind::kEmail,
                              std::move(mail)});
      }
    }
  }

  sort_and_number(sink.logon, "L");
  sort_and_number(sink.device, "D");
  sort_and_number(sink.email, "E");
  sort_and_number(sink.file, "F");

  std::filesystem::create_directories(dir / "LDAP");
  auto write_to = [&](const std::filesystem::path& path, LogKind kind,
                      const std::vector<LogEvent>& events) {
    std::ofstream out(path, std::ios::binary);
    write_log_file(out, kind, events);
    if (!out) throw Error("failed writing " + path.string());
  };
  write_to(dir / "logon.csv", LogKind::kLogon, sink.logon);
  write_to(dir / "device.csv", LogKind::kDevice, sink.device);
  write_to(dir / "email.csv", LogKind::kEmail, sink.email);
  write_to(dir / "file.csv", LogKind::kFile, sink.file);
  const std::string month = spec.start_date.substr(6, 4) + "-" + spec.start_date.substr(0, 2);
  {
    std::ofstream out(dir / "LDAP" / (month + ".csv"), std::ios::binary);
    write_ldap_snapshot(out, employees);
    if (!out) throw Error("failed writing LDAP snapshot");
  }
  {
    std::ofstream out(dir / "ground_truth.txt", std::ios::binary);
    write_ground_truth(out, topo.truth);
  }

  SynthLogs result;
  result.directory = OrgDirectory(std::move(employees));
  result.truth = topo.truth;
  result.events = sink.logon.size() + sink.device.size() + sink.email.size() + sink.file.size();
  return result;
}

}  // namespace insider
