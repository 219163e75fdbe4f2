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

#include "insider/ingest.h"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <tuple>

#include "insider/error.h"
#include "insider/text.h"

namespace insider {
namespace {

namespace chr = std::chrono;

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

// Locates the columns named in `wanted` inside `header`. Missing required
// columns raise a SchemaError that lists the expected layout.
std::vector<std::size_t> locate_columns(const std::vector<std::string>& header,
                                        const std::vector<std::string>& wanted,
                                        const ColumnRemap& remap,
                                        std::string_view source_name) {
  std::vector<std::string> lowered;
  lowered.reserve(header.size());
  for (const auto& h : header) lowered.push_back(to_lower(trim(h)));

  std::vector<std::size_t> positions;
  std::vector<std::string> missing;
  for (const auto& name : wanted) {
    std::string target = name;
    if (auto it = remap.find(name); it != remap.end()) target = it->second;
    target = to_lower(target);
    auto it = std::find(lowered.begin(), lowered.end(), target);
    if (it == lowered.end()) {
      missing.push_back(name);
      positions.push_back(0);
    } else {
      positions.push_back(static_cast<std::size_t>(it - lowered.begin()));
    }
  }
  if (!missing.empty()) {
    std::string expected;
    for (size_t i = 0; i < wanted.size(); ++i) {
      if (i) expected += ',';
      expected += wanted[i];
    }
    std::string names;
    for (size_t i = 0; i < missing.size(); ++i) {
      if (i) names += ", ";
      names += missing[i];
    }
    throw SchemaError("unrecognized header in '" + std::string(source_name) +
                      "': missing column(s) " + names +
                      "; expected columns " + expected);
  }
  return positions;
}

// Splits a ';' separated address list. Empty input is an empty list; an
// empty element between separators is malformed.
std::optional<std::vector<std::string>> split_recipients(std::string_view s) {
  s = trim(s);
  std::vector<std::string> out;
  if (s.empty()) return out;
  for (auto& part : split(s, ';')) {
    auto t = trim(part);
    if (t.empty() || t.find('@') == std::string_view::npos) return std::nullopt;
    out.emplace_back(t);
  }
  return out;
}

std::string join_recipients(const std::vector<std::string>& list) {
  std::string out;
  for (size_t i = 0; i < list.size(); ++i) {
    if (i) out += ';';
    out += list[i];
  }
  return out;
}

struct RowOutcome {
  std::optional<LogEvent> event;
  std::string reason;
};

RowOutcome reject(std::string reason) { return {std::nullopt, std::move(reason)}; }

RowOutcome parse_row(const std::vector<std::string>& fields,
                     const std::vector<std::size_t>& col, LogKind kind) {
  LogEvent ev;
  ev.event_id = std::string(trim(fields[col[0]]));
  auto ts = parse_timestamp(fields[col[1]]);
  if (!ts) return reject("unparseable timestamp '" + fields[col[1]] + "'");
  ev.timestamp = *ts;
  ev.user = std::string(trim(fields[col[2]]));
  if (ev.user.empty()) return reject("empty user");
  ev.pc = std::string(trim(fields[col[3]]));

  switch (kind) {
    case LogKind::kLogon:
    case LogKind::kDevice: {
      const std::string activity = to_lower(trim(fields[col[4]]));
      if (kind == LogKind::kLogon && activity == "logon") {
        ev.kind = EventKind::kLogon;
      } else if (kind == LogKind::kLogon && activity == "logoff") {
        ev.kind = EventKind::kLogoff;
      } else if (kind == LogKind::kDevice && activity == "connect") {
        ev.kind = EventKind::kDeviceConnect;
      } else if (kind == LogKind::kDevice && activity == "disconnect") {
        ev.kind = EventKind::kDeviceDisconnect;
      } else {
        return reject("unknown activity '" + fields[col[4]] + "'");
      }
      break;
    }
    case LogKind::kEmail: {
      ev.kind = EventKind::kEmail;
      EmailPayload mail;
      auto to = split_recipients(fields[col[4]]);
      auto cc = split_recipients(fields[col[5]]);
      auto bcc = split_recipients(fields[col[6]]);
      if (!to || !cc || !bcc) return reject("malformed recipient list");
      mail.to = std::move(*to);
      mail.cc = std::move(*cc);
      mail.bcc = std::move(*bcc);
      mail.from = std::string(trim(fields[col[7]]));
      if (mail.from.find('@') == std::string::npos) {
        return reject("malformed sender address '" + mail.from + "'");
      }
      auto size = parse_int(fields[col[8]]);
      auto attachments = parse_int(fields[col[9]]);
      if (!size || *size < 0) return reject("bad size '" + fields[col[8]] + "'");
      if (!attachments || *attachments < 0) {
        return reject("bad attachment count '" + fields[col[9]] + "'");
      }
      mail.size_bytes = *size;
      mail.attachments = static_cast<int>(*attachments);
      ev.payload = std::move(mail);
      break;
    }
    case LogKind::kFile: {
      ev.kind = EventKind::kFileCopy;
      FilePayload file{std::string(trim(fields[col[4]]))};
      if (file.filename.empty()) return reject("empty filename");
      ev.payload = std::move(file);
      break;
    }
  }
  return {std::move(ev), {}};
}

std::optional<std::tuple<int, int>> snapshot_date(const std::string& filename) {
  static const std::regex kDate(R"((\d{4})[-_](\d{2}))");
  std::smatch m;
  if (!std::regex_search(filename, m, kDate)) return std::nullopt;
  return std::make_tuple(std::stoi(m[1]), std::stoi(m[2]));
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  text = trim(text);
  const size_t space = text.find(' ');
  if (space == std::string_view::npos) return std::nullopt;
  auto date = split(text.substr(0, space), '/');
  auto clock = split(trim(text.substr(space + 1)), ':');
  if (date.size() != 3 || (clock.size() != 2 && clock.size() != 3)) {
    return std::nullopt;
  }
  for (const auto& p : date) {
    if (!all_digits(p)) return std::nullopt;
  }
  for (const auto& p : clock) {
    if (!all_digits(p) || p.size() > 2) return std::nullopt;
  }
  if (date[2].size() != 4) return std::nullopt;
  const int month = std::stoi(date[0]);
  const int day = std::stoi(date[1]);
  const int year = std::stoi(date[2]);
  const int hour = std::stoi(clock[0]);
  const int minute = std::stoi(clock[1]);
  const int second = clock.size() == 3 ? std::stoi(clock[2]) : 0;
  if (hour > 23 || minute > 59 || second > 59) return std::nullopt;
  const chr::year_month_day ymd{chr::year{year}, chr::month{static_cast<unsigned>(month)},
                                chr::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  return chr::sys_days{ymd} + chr::hours{hour} + chr::minutes{minute} +
         chr::seconds{second};
}

std::string format_timestamp(Timestamp ts) {
  const auto day = chr::floor<chr::days>(ts);
  const chr::year_month_day ymd{day};
  const chr::hh_mm_ss hms{ts - day};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%02u/%02u/%04d %02d:%02d:%02d",
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(ymd.year()), static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::string_view to_string(LogKind kind) {
  switch (kind) {
    case LogKind::kLogon: return "logon";
    case LogKind::kDevice: return "device";
    case LogKind::kEmail: return "email";
    case LogKind::kFile: return "file";
  }
  return "?";
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kLogon: return "logon";
    case EventKind::kLogoff: return "logoff";
    case EventKind::kDeviceConnect: return "device_connect";
    case EventKind::kDeviceDisconnect: return "device_disconnect";
    case EventKind::kEmail: return "email";
    case EventKind::kFileCopy: return "file_copy";
  }
  return "?";
}

const std::vector<std::string>& required_columns(LogKind kind) {
  static const std::vector<std::string> kActivity = {"id", "date", "user", "pc",
                                                     "activity"};
  static const std::vector<std::string> kEmail = {
      "id", "date", "user", "pc", "to", "cc", "bcc", "from", "size", "attachments"};
  static const std::vector<std::string> kFile = {"id", "date", "user", "pc",
                                                 "filename"};
  switch (kind) {
    case LogKind::kLogon:
    case LogKind::kDevice: return kActivity;
    case LogKind::kEmail: return kEmail;
    case LogKind::kFile: return kFile;
  }
  return kActivity;
}

ParseResult parse_log_file(std::istream& in, LogKind kind,
                           std::string_view source_name,
                           const ColumnRemap& remap) {
  ParseResult result;
  std::string line;
  if (!read_line(in, line)) {
    throw SchemaError("'" + std::string(source_name) + "' has no header row");
  }
  auto header = split_csv_record(line);
  if (!header) throw SchemaError("unparseable header in '" + std::string(source_name) + "'");
  const auto columns = locate_columns(*header, required_columns(kind), remap, source_name);
  // A trailing free-text content column may carry unquoted commas; extra
  // fields are folded back into it.
  const bool trailing_content =
      !header->empty() && to_lower(trim(header->back())) == "content";

  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    ++result.data_rows;
    auto fields = split_csv_record(line);
    std::string reason;
    if (!fields) {
      reason = "unterminated quote";
    } else if (fields->size() > header->size() && trailing_content) {
      fields->resize(header->size());
    } else if (fields->size() != header->size()) {
      reason = "expected " + std::to_string(header->size()) + " fields, got " +
               std::to_string(fields->size());
    }
    if (reason.empty()) {
      auto outcome = parse_row(*fields, columns, kind);
      if (outcome.event) {
        result.events.push_back(std::move(*outcome.event));
        continue;
      }
      reason = std::move(outcome.reason);
    }
    result.rejects.push_back({std::string(source_name), line_no, std::move(reason)});
  }
  return result;
}

ParseResult parse_log_file(const std::filesystem::path& path, LogKind kind,
                           const ColumnRemap& remap) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open log file " + path.string());
  return parse_log_file(in, kind, path.filename().string(), remap);
}

void write_log_file(std::ostream& out, LogKind kind,
                    const std::vector<LogEvent>& events) {
  switch (kind) {
    case LogKind::kLogon:
    case LogKind::kDevice: out << "id,date,user,pc,activity\n"; break;
    case LogKind::kEmail:
      out << "id,date,user,pc,to,cc,bcc,from,size,attachments,content\n";
      break;
    case LogKind::kFile: out << "id,date,user,pc,filename,content\n"; break;
  }
  for (const auto& ev : events) {
    std::vector<std::string> row = {ev.event_id, format_timestamp(ev.timestamp),
                                    ev.user, ev.pc};
    switch (ev.kind) {
      case EventKind::kLogon: row.emplace_back("Logon"); break;
      case EventKind::kLogoff: row.emplace_back("Logoff"); break;
      case EventKind::kDeviceConnect: row.emplace_back("Connect"); break;
      case EventKind::kDeviceDisconnect: row.emplace_back("Disconnect"); break;
      case EventKind::kEmail: {
        const auto& mail = std::get<EmailPayload>(ev.payload);
        row.push_back(join_recipients(mail.to));
        row.push_back(join_recipients(mail.cc));
        row.push_back(join_recipients(mail.bcc));
        row.push_back(mail.from);
        row.push_back(std::to_string(mail.size_bytes));
        row.push_back(std::to_string(mail.attachments));
        row.emplace_back();
        break;
      }
      case EventKind::kFileCopy:
        row.push_back(std::get<FilePayload>(ev.payload).filename);
        row.emplace_back();
        break;
    }
    out << join_csv_record(row) << '\n';
  }
}

void write_rejects(std::ostream& out, const std::vector<Reject>& rejects) {
  out << "file,line,reason\n";
  for (const auto& r : rejects) {
    out << join_csv_record({r.file, std::to_string(r.line), r.reason}) << '\n';
  }
}

OrgDirectory::OrgDirectory(std::vector<Employee> employees)
    : employees_(std::move(employees)) {
  std::sort(employees_.begin(), employees_.end(),
            [](const Employee& a, const Employee& b) { return a.user_id < b.user_id; });
  for (std::size_t i = 0; i < employees_.size(); ++i) {
    const auto& e = employees_[i];
    if (e.user_id.empty()) throw DataError("employee with empty user_id");
    if (!by_id_.emplace(e.user_id, i).second) {
      throw DataError("duplicate user_id " + e.user_id);
    }
    if (!e.email.empty()) by_email_.emplace(to_lower(e.email), i);
  }
  for (const auto& e : employees_) {
    if (e.supervisor && !by_id_.contains(*e.supervisor)) {
      throw DataError("supervisor '" + *e.supervisor + "' of " + e.user_id +
                      " is not a known user");
    }
  }
}

std::optional<std::size_t> OrgDirectory::index_of(std::string_view user_id) const {
  auto it = by_id_.find(std::string(user_id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> OrgDirectory::index_of_email(std::string_view email) const {
  auto it = by_email_.find(to_lower(trim(email)));
  if (it == by_email_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> OrgDirectory::user_ids() const {
  std::vector<std::string> ids;
  ids.reserve(employees_.size());
  for (const auto& e : employees_) ids.push_back(e.user_id);
  return ids;
}

std::vector<Employee> parse_ldap_snapshot(std::istream& in,
                                          std::string_view source_name) {
  static const std::vector<std::string> kRequired = {
      "user_id", "email", "role", "functional_unit", "department", "team",
      "supervisor"};
  std::string line;
  if (!read_line(in, line)) {
    throw SchemaError("LDAP snapshot '" + std::string(source_name) + "' is empty");
  }
  auto header = split_csv_record(line);
  if (!header) throw SchemaError("unparseable LDAP header in " + std::string(source_name));
  const auto col = locate_columns(*header, kRequired, {}, source_name);
  std::optional<std::size_t> name_col;
  for (std::size_t i = 0; i < header->size(); ++i) {
    if (to_lower(trim((*header)[i])) == "employee_name") name_col = i;
  }

  std::vector<Employee> out;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t line_no = 1;
  while (read_line(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_record(line);
    if (!fields || fields->size() != header->size()) {
      throw DataError("malformed LDAP row at " + std::string(source_name) + ":" +
                      std::to_string(line_no));
    }
    Employee e;
    e.user_id = std::string(trim((*fields)[col[0]]));
    e.email = std::string(trim((*fields)[col[1]]));
    e.role = std::string(trim((*fields)[col[2]]));
    e.functional_unit = std::string(trim((*fields)[col[3]]));
    e.department = std::string(trim((*fields)[col[4]]));
    e.team = std::string(trim((*fields)[col[5]]));
    auto sup = trim((*fields)[col[6]]);
    if (!sup.empty()) e.supervisor = std::string(sup);
    if (name_col) e.employee_name = std::string(trim((*fields)[*name_col]));
    if (e.user_id.empty()) {
      throw DataError("empty user_id at " + std::string(source_name) + ":" +
                      std::to_string(line_no));
    }
    if (!seen.emplace(e.user_id, line_no).second) {
      throw DataError("duplicate user_id " + e.user_id + " in LDAP snapshot " +
                      std::string(source_name));
    }
    out.push_back(std::move(e));
  }
  return out;
}

OrgDirectory merge_snapshots(const std::vector<std::vector<Employee>>& snapshots) {
  if (snapshots.empty()) throw DataError("no LDAP snapshots to merge");
  std::map<std::string, Employee> merged;
  for (const auto& snapshot : snapshots) {
    for (const auto& e : snapshot) merged[e.user_id] = e;
  }
  std::unordered_map<std::string, std::string> id_by_name;
  std::unordered_map<std::string, int> name_count;
  for (const auto& [id, e] : merged) {
    if (e.employee_name.empty()) continue;
    id_by_name[e.employee_name] = id;
    ++name_count[e.employee_name];
  }
  std::vector<Employee> employees;
  employees.reserve(merged.size());
  for (auto& [id, e] : merged) {
    if (e.supervisor) {
      const std::string& ref = *e.supervisor;
      if (merged.contains(ref)) {
        // already a user id
      } else if (auto it = id_by_name.find(ref);
                 it != id_by_name.end() && name_count[ref] == 1) {
        e.supervisor = it->second;
      } else {
        throw DataError("supervisor '" + ref + "' of " + id +
                        " does not resolve to a unique user");
      }
      if (*e.supervisor == id) e.supervisor.reset();
    }
    employees.push_back(e);
  }
  return OrgDirectory(std::move(employees));
}

OrgDirectory load_ldap_snapshots(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw DataError("LDAP directory " + dir.string() + " does not exist");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && to_lower(entry.path().extension().string()) == ".csv") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw DataError("no LDAP snapshots found in " + dir.string());
  auto key = [](const fs::path& p) {
    const std::string name = p.filename().string();
    auto date = snapshot_date(name);
    return std::make_tuple(date ? 0 : 1, date.value_or(std::make_tuple(0, 0)), name);
  };
  std::sort(files.begin(), files.end(),
            [&](const fs::path& a, const fs::path& b) { return key(a) < key(b); });

  std::vector<std::vector<Employee>> snapshots;
  for (const auto& f : files) {
    std::ifstream in(f);
    if (!in) throw DataError("cannot open " + f.string());
    snapshots.push_back(parse_ldap_snapshot(in, f.filename().string()));
  }
  return merge_snapshots(snapshots);
}

void write_ldap_snapshot(std::ostream& out, const std::vector<Employee>& employees) {
  out << "employee_name,user_id,email,role,functional_unit,department,team,supervisor\n";
  for (const auto& e : employees) {
    out << join_csv_record({e.employee_name, e.user_id, e.email, e.role,
                            e.functional_unit, e.department, e.team,
                            e.supervisor.value_or("")})
        << '\n';
  }
}

std::map<std::string, std::vector<LogEvent>> group_by_user(
    const std::vector<LogEvent>& events) {
  std::map<std::string, std::vector<LogEvent>> grouped;
  for (const auto& ev : events) grouped[ev.user].push_back(ev);
  return grouped;
}

}  // namespace insider
