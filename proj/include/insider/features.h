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

// Per-user behavioural attribute vectors (125 dimensions) and their
// normalization.
//
// Attribute groups, in canonical order. "x9" groups expand to
// {all,bh,ah} x {max,min,avg}; "x3" groups to {max,min,avg}.
//
//   email_rcpt_{to,cc,bcc}_{max,min,avg}      recipients per sent email   x9
//   email_size_*                             bytes per email              x3
//   email_attachments_*                      attachments per email        x3
//   email_daily_sent_{all,bh,ah}_*           emails per active day        x9
//   email_sent_time_*                        decimal hour of sending      x3
//   email_pcs, email_addresses,
//   email_internal_contacts, email_external_contacts                     4 x1
//   role, functional_unit, department, team  dense integer codes         4 x1
//   logon_time_*, logoff_time_*              decimal hours                x9 each
//   logon_daily_count_*, logoff_daily_count_*                             x9 each
//   logon_daily_pcs_*                        distinct PCs per active day  x3
//   device_daily_count_*                     connects per active day      x9
//   device_time_*                            decimal hour of connect      x9
//   device_pcs_{total,daily_max,daily_min,daily_avg}                     x4
//   device_days_total                                                     x1
//   file_time_*                              decimal hour of copy         x9
//   file_days_{all,bh,ah}                    days with >= 1 copy          x3
//   file_daily_count_*                       copies per active day        x9
//   file_type_{doc,exe,jpg,pdf,txt,zip}      share of copies              x6
//   file_pcs                                                              x1
//
// Daily statistics are taken over days with at least one qualifying event
// (a day counts for "bh" only if it has a business-hours event, etc).
// A user without any qualifying events gets 0 for the whole group.

#ifndef INSIDER_FEATURES_H_
#define INSIDER_FEATURES_H_

#include <Eigen/Core>
#include <array>
#include <chrono>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "insider/ingest.h"

namespace insider {

inline constexpr std::size_t kAttributeCount = 125;

// File extensions with their own ratio attribute.
inline constexpr std::array<const char*, 6> kFileTypes = {"doc", "exe", "jpg",
                                                          "pdf", "txt", "zip"};

struct CalendarConfig {
  std::chrono::minutes business_start{8 * 60};
  std::chrono::minutes business_end{17 * 60};
  // Indexed by std::chrono::weekday::c_encoding() (0 = Sunday).
  std::array<bool, 7> business_days{false, true, true, true, true, true, false};

  // Throws ConfigError unless start < end within one day.
  void validate() const;
};

enum class HourClass { kBusiness, kAfter };

HourClass classify_hours(Timestamp ts, const CalendarConfig& config);

// hour + minute / 60; seconds are ignored.
double decimal_hours(Timestamp ts);

const std::vector<std::string>& attribute_names();

// Rows follow `users` order; columns follow `names` (attribute_names() for
// extracted tables).
struct AttributeTable {
  std::vector<std::string> users;
  std::vector<std::string> names;
  Eigen::MatrixXd values;
};

struct CategoricalCodes {
  std::map<std::string, int> role;
  std::map<std::string, int> functional_unit;
  std::map<std::string, int> department;
  std::map<std::string, int> team;
};

// Distinct values per category get 0..k-1 in lexicographic order.
CategoricalCodes encode_categoricals(const OrgDirectory& directory);

struct FeatureOptions {
  CalendarConfig calendar;
  // Recipients whose address ends with "@" + domain are internal.
  std::string internal_domain = "dtaa.com";
};

// One row per directory user, in directory order. Throws DataError when
// `events_by_user` mentions a user that is not in the directory.
AttributeTable extract_attributes(
    const std::map<std::string, std::vector<LogEvent>>& events_by_user,
    const OrgDirectory& directory, const FeatureOptions& options = {});

// Single-user extraction; categorical slots are filled from `codes`.
Eigen::VectorXd extract_user_attributes(const std::vector<LogEvent>& events,
                                        const Employee& employee,
                                        const CategoricalCodes& codes,
                                        const FeatureOptions& options);

// Per-column min-max scaling into [0,1]. Constant columns become zero.
template <typename Derived>
typename Derived::PlainObject normalize_matrix(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  typename Derived::PlainObject out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (m.rows() == 0) break;
    const Scalar lo = m.col(j).minCoeff();
    const Scalar hi = m.col(j).maxCoeff();
    const Scalar span = hi - lo;
    if (span > Scalar(0)) {
      out.col(j) = ((m.col(j).array() - lo) / span).matrix();
    } else {
      out.col(j).setZero();
    }
  }
  return out;
}

// nodes.csv layout: header `user_id,<attribute names>`, one row per user.
void write_attribute_csv(std::ostream& out, const AttributeTable& table);
AttributeTable read_attribute_csv(std::istream& in, std::string_view source_name = "");

}  // namespace insider

#endif  // INSIDER_FEATURES_H_
