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

#include "insider/features.h"

#include <algorithm>
#include <set>
#include <sstream>

#include "insider/error.h"
#include "insider/text.h"

namespace insider {
namespace {

namespace chr = std::chrono;

constexpr std::array<const char*, 3> kSplits = {"all", "bh", "ah"};
constexpr std::array<const char*, 3> kStats = {"max", "min", "avg"};

void add3(std::vector<std::string>& names, const std::string& prefix) {
  for (const char* s : kStats) names.push_back(prefix + "_" + s);
}

void add9(std::vector<std::string>& names, const std::string& prefix) {
  for (const char* split : kSplits) add3(names, prefix + "_" + split);
}

std::vector<std::string> build_names() {
  std::vector<std::string> n;
  for (const char* field : {"to", "cc", "bcc"}) add3(n, std::string("email_rcpt_") + field);
  add3(n, "email_size");
  add3(n, "email_attachments");
  add9(n, "email_daily_sent");
  add3(n, "email_sent_time");
  n.insert(n.end(), {"email_pcs", "email_addresses", "email_internal_contacts",
                     "email_external_contacts", "role", "functional_unit",
                     "department", "team"});
  add9(n, "logon_time");
  add9(n, "logoff_time");
  add9(n, "logon_daily_count");
  add9(n, "logoff_daily_count");
  add3(n, "logon_daily_pcs");
  add9(n, "device_daily_count");
  add9(n, "device_time");
  n.insert(n.end(), {"device_pcs_total", "device_pcs_daily_max",
                     "device_pcs_daily_min", "device_pcs_daily_avg",
                     "device_days_total"});
  add9(n, "file_time");
  n.insert(n.end(), {"file_days_all", "file_days_bh", "file_days_ah"});
  add9(n, "file_daily_count");
  for (const char* ext : kFileTypes) n.push_back(std::string("file_type_") + ext);
  n.push_back("file_pcs");
  return n;
}

// Appends max, min, avg of `xs` (zeros when empty).
class Writer {
 public:
  explicit Writer(Eigen::VectorXd& out) : out_(out) {}

  void stats(const std::vector<double>& xs) {
    if (xs.empty()) {
      scalar(0);
      scalar(0);
      scalar(0);
      return;
    }
    double sum = 0;
    for (double x : xs) sum += x;
    scalar(*std::max_element(xs.begin(), xs.end()));
    scalar(*std::min_element(xs.begin(), xs.end()));
    scalar(sum / static_cast<double>(xs.size()));
  }

  void scalar(double x) { out_(pos_++) = x; }
  Eigen::Index position() const { return pos_; }

 private:
  Eigen::VectorXd& out_;
  Eigen::Index pos_ = 0;
};

// Event times and per-day counts split into all / business / after hours.
struct SplitSeries {
  std::array<std::vector<double>, 3> times;
  std::array<std::map<chr::sys_days, int>, 3> per_day;

  void add(Timestamp ts, const CalendarConfig& cal) {
    const double hours = decimal_hours(ts);
    const auto day = chr::floor<chr::days>(ts);
    const int split = classify_hours(ts, cal) == HourClass::kBusiness ? 1 : 2;
    for (int s : {0, split}) {
      times[s].push_back(hours);
      ++per_day[s][day];
    }
  }

  std::vector<double> daily(int s) const {
    std::vector<double> counts;
    counts.reserve(per_day[s].size());
    for (const auto& [day, c] : per_day[s]) counts.push_back(c);
    return counts;
  }

  void write_times(Writer& w) const {
    for (int s = 0; s < 3; ++s) w.stats(times[s]);
  }
  void write_daily(Writer& w) const {
    for (int s = 0; s < 3; ++s) w.stats(daily(s));
  }
};

std::vector<double> distinct_per_day(
    const std::map<chr::sys_days, std::set<std::string>>& by_day) {
  std::vector<double> out;
  for (const auto& [day, pcs] : by_day) out.push_back(static_cast<double>(pcs.size()));
  return out;
}

bool is_internal(const std::string& address, const std::string& domain) {
  const std::string lowered = to_lower(address);
  const std::string suffix = "@" + to_lower(domain);
  return lowered.size() > suffix.size() &&
         lowered.compare(lowered.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string extension_of(const std::string& filename) {
  const auto dot = filename.rfind('.');
  if (dot == std::string::npos) return {};
  return to_lower(filename.substr(dot + 1));
}

int code_of(const std::map<std::string, int>& codes, const std::string& value) {
  auto it = codes.find(value);
  return it == codes.end() ? 0 : it->second;
}

std::map<std::string, int> dense_codes(const std::set<std::string>& values) {
  std::map<std::string, int> codes;
  int next = 0;
  for (const auto& v : values) codes.emplace(v, next++);
  return codes;
}

}  // namespace

void CalendarConfig::validate() const {
  if (business_start < chr::minutes{0} || business_end > chr::minutes{24 * 60} ||
      business_start >= business_end) {
    throw ConfigError("business hours must satisfy 00:00 <= start < end <= 24:00");
  }
}

HourClass classify_hours(Timestamp ts, const CalendarConfig& config) {
  const auto day = chr::floor<chr::days>(ts);
  const chr::weekday wd{day};
  const auto clock = chr::floor<chr::minutes>(ts - day);
  const bool business = config.business_days[wd.c_encoding()] &&
                        config.business_start <= clock && clock < config.business_end;
  return business ? HourClass::kBusiness : HourClass::kAfter;
}

double decimal_hours(Timestamp ts) {
  const auto day = chr::floor<chr::days>(ts);
  const chr::hh_mm_ss hms{ts - day};
  return static_cast<double>(hms.hours().count()) +
         static_cast<double>(hms.minutes().count()) / 60.0;
}

const std::vector<std::string>& attribute_names() {
  static const std::vector<std::string> kNames = build_names();
  return kNames;
}

CategoricalCodes encode_categoricals(const OrgDirectory& directory) {
  std::set<std::string> roles, units, departments, teams;
  for (const auto& e : directory.employees()) {
    roles.insert(e.role);
    units.insert(e.functional_unit);
    departments.insert(e.department);
    teams.insert(e.team);
  }
  return {dense_codes(roles), dense_codes(units), dense_codes(departments),
          dense_codes(teams)};
}

Eigen::VectorXd extract_user_attributes(const std::vector<LogEvent>& events,
                                        const Employee& employee,
                                        const CategoricalCodes& codes,
                                        const FeatureOptions& options) {
  const CalendarConfig& cal = options.calendar;

  std::array<std::vector<double>, 3> recipients;
  std::vector<double> sizes, attachments;
  SplitSeries email_series;
  std::set<std::string> email_pcs, from_addresses, internal_contacts, external_contacts;

  SplitSeries logon_series, logoff_series;
  std::map<chr::sys_days, std::set<std::string>> logon_pcs_by_day;

  SplitSeries device_series;
  std::set<std::string> device_pcs;
  std::map<chr::sys_days, std::set<std::string>> device_pcs_by_day;

  SplitSeries file_series;
  std::array<int, kFileTypes.size()> type_counts{};
  int file_total = 0;
  std::set<std::string> file_pcs;

  std::set<std::string> own_addresses;
  if (!employee.email.empty()) own_addresses.insert(to_lower(employee.email));
  for (const auto& ev : events) {
    if (const auto* mail = ev.email()) own_addresses.insert(to_lower(mail->from));
  }

  for (const auto& ev : events) {
    const auto day = chr::floor<chr::days>(ev.timestamp);
    switch (ev.kind) {
      case EventKind::kEmail: {
        const auto& mail = *ev.email();
        recipients[0].push_back(static_cast<double>(mail.to.size()));
        recipients[1].push_back(static_cast<double>(mail.cc.size()));
        recipients[2].push_back(static_cast<double>(mail.bcc.size()));
        sizes.push_back(static_cast<double>(mail.size_bytes));
        attachments.push_back(mail.attachments);
        email_series.add(ev.timestamp, cal);
        email_pcs.insert(ev.pc);
        from_addresses.insert(to_lower(mail.from));
        for (const auto* list : {&mail.to, &mail.cc, &mail.bcc}) {
          for (const auto& addr : *list) {
            const std::string a = to_lower(addr);
            if (own_addresses.contains(a)) continue;
            (is_internal(a, options.internal_domain) ? internal_contacts
                                                     : external_contacts)
                .insert(a);
          }
        }
        break;
      }
      case EventKind::kLogon:
        logon_series.add(ev.timestamp, cal);
        logon_pcs_by_day[day].insert(ev.pc);
        break;
      case EventKind::kLogoff:
        logoff_series.add(ev.timestamp, cal);
        logon_pcs_by_day[day].insert(ev.pc);
        break;
      case EventKind::kDeviceConnect:
        device_series.add(ev.timestamp, cal);
        device_pcs.insert(ev.pc);
        device_pcs_by_day[day].insert(ev.pc);
        break;
      case EventKind::kDeviceDisconnect:
        break;
      case EventKind::kFileCopy: {
        file_series.add(ev.timestamp, cal);
        file_pcs.insert(ev.pc);
        ++file_total;
        const std::string ext = extension_of(ev.file()->filename);
        for (std::size_t t = 0; t < kFileTypes.size(); ++t) {
          if (ext == kFileTypes[t]) ++type_counts[t];
        }
        break;
      }
    }
  }

  Eigen::VectorXd v(static_cast<Eigen::Index>(kAttributeCount));
  Writer w(v);
  for (const auto& r : recipients) w.stats(r);
  w.stats(sizes);
  w.stats(attachments);
  email_series.write_daily(w);
  w.stats(email_series.times[0]);
  w.scalar(static_cast<double>(email_pcs.size()));
  w.scalar(static_cast<double>(from_addresses.size()));
  w.scalar(static_cast<double>(internal_contacts.size()));
  w.scalar(static_cast<double>(external_contacts.size()));

  w.scalar(code_of(codes.role, employee.role));
  w.scalar(code_of(codes.functional_unit, employee.functional_unit));
  w.scalar(code_of(codes.department, employee.department));
  w.scalar(code_of(codes.team, employee.team));

  logon_series.write_times(w);
  logoff_series.write_times(w);
  logon_series.write_daily(w);
  logoff_series.write_daily(w);
  w.stats(distinct_per_day(logon_pcs_by_day));

  device_series.write_daily(w);
  device_series.write_times(w);
  w.scalar(static_cast<double>(device_pcs.size()));
  w.stats(distinct_per_day(device_pcs_by_day));
  w.scalar(static_cast<double>(device_series.per_day[0].size()));

  file_series.write_times(w);
  for (int s = 0; s < 3; ++s) {
    w.scalar(static_cast<double>(file_series.per_day[s].size()));
  }
  file_series.write_daily(w);
  for (int count : type_counts) {
    w.scalar(file_total > 0 ? static_cast<double>(count) / file_total : 0.0);
  }
  w.scalar(static_cast<double>(file_pcs.size()));

  if (static_cast<std::size_t>(w.position()) != kAttributeCount) {
    throw std::logic_error("attribute layout mismatch");
  }
  return v;
}

AttributeTable extract_attributes(
    const std::map<std::string, std::vector<LogEvent>>& events_by_user,
    const OrgDirectory& directory, const FeatureOptions& options) {
  options.calendar.validate();
  for (const auto& [user, events] : events_by_user) {
    if (!directory.index_of(user)) {
      throw DataError("user " + user + " has activity but no directory record");
    }
  }
  const CategoricalCodes codes = encode_categoricals(directory);
  AttributeTable table;
  table.users = directory.user_ids();
  table.names = attribute_names();
  table.values.resize(static_cast<Eigen::Index>(directory.size()),
                      static_cast<Eigen::Index>(kAttributeCount));
  static const std::vector<LogEvent> kNoEvents;
  for (std::size_t i = 0; i < directory.size(); ++i) {
    const Employee& e = directory.at(i);
    auto it = events_by_user.find(e.user_id);
    const auto& events = it == events_by_user.end() ? kNoEvents : it->second;
    table.values.row(static_cast<Eigen::Index>(i)) =
        extract_user_attributes(events, e, codes, options).transpose();
  }
  return table;
}

void write_attribute_csv(std::ostream& out, const AttributeTable& table) {
  if (table.names.size() != static_cast<std::size_t>(table.values.cols())) {
    throw DataError("attribute table has mismatched column names");
  }
  out << "user_id";
  for (const auto& n : table.names) out << ',' << escape_csv_field(n);
  out << '\n';
  for (std::size_t i = 0; i < table.users.size(); ++i) {
    out << escape_csv_field(table.users[i]);
    for (Eigen::Index j = 0; j < table.values.cols(); ++j) {
      out << ',' << format_double(table.values(static_cast<Eigen::Index>(i), j));
    }
    out << '\n';
  }
}

AttributeTable read_attribute_csv(std::istream& in, std::string_view source_name) {
  const std::string source(source_name);
  std::string line;
  if (!read_line(in, line)) throw SchemaError("attribute file " + source + " is empty");
  auto header = split_csv_record(line);
  if (!header || header->empty() || to_lower((*header)[0]) != "user_id") {
    throw SchemaError("attribute file " + source + " must start with a user_id column");
  }
  const auto cols = static_cast<Eigen::Index>(header->size() - 1);
  std::vector<std::string> users;
  std::vector<double> flat;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_record(line);
    if (!fields || fields->size() != header->size()) {
      throw DataError("malformed attribute row at " + source + ":" + std::to_string(line_no));
    }
    users.push_back((*fields)[0]);
    for (std::size_t j = 1; j < fields->size(); ++j) {
      auto v = parse_double((*fields)[j]);
      if (!v) {
        throw DataError("non-numeric attribute at " + source + ":" +
                        std::to_string(line_no));
      }
      flat.push_back(*v);
    }
  }
  AttributeTable table;
  table.users = std::move(users);
  table.names.assign(header->begin() + 1, header->end());
  table.values.resize(static_cast<Eigen::Index>(table.users.size()), cols);
  for (Eigen::Index i = 0; i < table.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      table.values(i, j) = flat[static_cast<std::size_t>(i * cols + j)];
    }
  }
  return table;
}

}  // namespace insider
