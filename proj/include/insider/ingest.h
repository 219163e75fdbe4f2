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

// Readers for CERT r4.2 style activity logs and LDAP directory snapshots.
//
// Log files are CSV with a header row. Columns are located by name
// (case-insensitive), so column order does not matter and unknown extra
// columns are ignored. A malformed data row never aborts a file: it is
// recorded as a Reject with its 1-based line number and skipped.

#ifndef INSIDER_INGEST_H_
#define INSIDER_INGEST_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace insider {

using Timestamp = std::chrono::sys_seconds;

// Parses `MM/DD/YYYY HH:MM:SS` (seconds optional). Rejects impossible dates.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);

enum class LogKind { kLogon, kDevice, kEmail, kFile };

enum class EventKind {
  kLogon,
  kLogoff,
  kDeviceConnect,
  kDeviceDisconnect,
  kEmail,
  kFileCopy,
};

std::string_view to_string(LogKind kind);
std::string_view to_string(EventKind kind);

struct EmailPayload {
  std::string from;
  std::vector<std::string> to;
  std::vector<std::string> cc;
  std::vector<std::string> bcc;
  std::int64_t size_bytes = 0;
  int attachments = 0;

  bool operator==(const EmailPayload&) const = default;
};

struct FilePayload {
  std::string filename;

  bool operator==(const FilePayload&) const = default;
};

struct LogEvent {
  std::string event_id;
  Timestamp timestamp;
  std::string user;
  std::string pc;
  EventKind kind = EventKind::kLogon;
  std::variant<std::monostate, EmailPayload, FilePayload> payload;

  const EmailPayload* email() const { return std::get_if<EmailPayload>(&payload); }
  const FilePayload* file() const { return std::get_if<FilePayload>(&payload); }

  bool operator==(const LogEvent&) const = default;
};

struct Reject {
  std::string file;
  std::size_t line = 0;
  std::string reason;
};

struct ParseResult {
  std::vector<LogEvent> events;
  std::vector<Reject> rejects;
  std::size_t data_rows = 0;
};

// Maps a canonical column name (e.g. "date") to the header name actually
// used in the file. Only needed for files that deviate from CERT r4.2.
using ColumnRemap = std::map<std::string, std::string>;

// Canonical required columns for `kind`, in CERT r4.2 order.
const std::vector<std::string>& required_columns(LogKind kind);

// Throws SchemaError when a required column is missing from the header.
ParseResult parse_log_file(std::istream& in, LogKind kind,
                           std::string_view source_name = "",
                           const ColumnRemap& remap = {});

ParseResult parse_log_file(const std::filesystem::path& path, LogKind kind,
                           const ColumnRemap& remap = {});

// Writes events in the canonical layout for `kind`. Content columns are
// emitted empty. Re-parsing the output yields the same events.
void write_log_file(std::ostream& out, LogKind kind,
                    const std::vector<LogEvent>& events);

void write_rejects(std::ostream& out, const std::vector<Reject>& rejects);

struct Employee {
  std::string user_id;
  std::string employee_name;
  std::string email;
  std::string role;
  std::string functional_unit;
  std::string department;
  std::string team;
  std::optional<std::string> supervisor;  // user id

  bool operator==(const Employee&) const = default;
};

// Organizational directory keyed by user id. Employees are kept sorted by
// user id, which fixes the vertex order of every downstream matrix.
class OrgDirectory {
 public:
  OrgDirectory() = default;

  // Validates uniqueness and supervisor references; throws DataError.
  explicit OrgDirectory(std::vector<Employee> employees);

  const std::vector<Employee>& employees() const { return employees_; }
  std::size_t size() const { return employees_.size(); }
  bool empty() const { return employees_.empty(); }

  std::optional<std::size_t> index_of(std::string_view user_id) const;
  // Case-insensitive lookup.
  std::optional<std::size_t> index_of_email(std::string_view email) const;
  const Employee& at(std::size_t i) const { return employees_.at(i); }

  std::vector<std::string> user_ids() const;

 private:
  std::vector<Employee> employees_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, std::size_t> by_email_;
};

// Reads one snapshot. Duplicate user ids inside the file are a DataError.
// The supervisor column is kept verbatim; resolution happens on merge.
std::vector<Employee> parse_ldap_snapshot(std::istream& in,
                                          std::string_view source_name = "");

// Merges every *.csv snapshot in `dir`. Snapshots are ordered by the
// YYYY-MM date in their filename (falling back to the filename), and the
// latest record of each user wins. Supervisor fields may name either a user
// id or an employee_name (CERT r4.2 uses names); both are resolved to ids.
OrgDirectory load_ldap_snapshots(const std::filesystem::path& dir);

// Same merge over in-memory snapshots already sorted oldest first.
OrgDirectory merge_snapshots(const std::vector<std::vector<Employee>>& snapshots);

void write_ldap_snapshot(std::ostream& out, const std::vector<Employee>& employees);

// Groups events by user id, preserving per-user input order.
std::map<std::string, std::vector<LogEvent>> group_by_user(
    const std::vector<LogEvent>& events);

}  // namespace insider

#endif  // INSIDER_INGEST_H_
