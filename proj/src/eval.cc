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

#include "insider/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "insider/error.h"
#include "insider/text.h"

namespace insider {
namespace {

void check_inputs(std::span<const double> scores, const std::vector<bool>& labels,
                  int& positives, int& negatives) {
  if (scores.size() != labels.size()) {
    throw DataError("score count " + std::to_string(scores.size()) + " != label count " +
                    std::to_string(labels.size()));
  }
  positives = static_cast<int>(std::count(labels.begin(), labels.end(), true));
  negatives = static_cast<int>(labels.size()) - positives;
  if (positives == 0) throw DataError("AUC undefined: no positive (malicious) users");
  if (negatives == 0) throw DataError("AUC undefined: no negative (benign) users");
  for (double s : scores) {
    if (std::isnan(s)) throw DataError("AUC undefined: NaN score");
  }
}

}  // namespace

GroundTruth read_ground_truth(std::istream& in) {
  GroundTruth truth;
  std::string line;
  while (read_line(in, line)) {
    const auto id = trim(line);
    if (id.empty() || id.front() == '#') continue;
    truth.emplace(id);
  }
  return truth;
}

GroundTruth read_ground_truth(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open ground truth file " + path.string());
  return read_ground_truth(in);
}

void write_ground_truth(std::ostream& out, const GroundTruth& truth) {
  for (const auto& id : truth) out << id << '\n';
}

std::vector<bool> label_users(const std::vector<std::string>& users, const GroundTruth& truth) {
  std::vector<bool> labels(users.size(), false);
  std::size_t found = 0;
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (truth.count(users[i])) {
      labels[i] = true;
      ++found;
    }
  }
  if (found != truth.size()) {
    std::string missing;
    for (const auto& id : truth) {
      if (std::find(users.begin(), users.end(), id) == users.end()) {
        if (!missing.empty()) missing += ", ";
        missing += id;
      }
    }
    throw DataError("ground truth users not in the graph: " + missing);
  }
  return labels;
}

RocCurve roc_auc(std::span<const double> scores, const std::vector<bool>& labels) {
  RocCurve curve;
  check_inputs(scores, labels, curve.positives, curve.negatives);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  const auto p = static_cast<std::int64_t>(curve.positives);
  const auto n = static_cast<std::int64_t>(curve.negatives);
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  // Twice the area in units of 1/(p*n).
  std::int64_t twice_area = 0;
  curve.points.push_back({0.0, 0.0});
  for (std::size_t i = 0; i < order.size();) {
    const double t = scores[order[i]];
    const std::int64_t tp0 = tp;
    const std::int64_t fp0 = fp;
    for (; i < order.size() && scores[order[i]] == t; ++i) {
      if (labels[order[i]]) {
        ++tp;
      } else {
        ++fp;
      }
    }
    twice_area += (fp - fp0) * (tp + tp0);
    curve.points.push_back(
        {static_cast<double>(fp) / static_cast<double>(n),
         static_cast<double>(tp) / static_cast<double>(p)});
  }
  curve.auc = static_cast<double>(twice_area) / (2.0 * static_cast<double>(p * n));

  const double check = mann_whitney_auc(scores, labels);
  if (std::abs(check - curve.auc) > 1e-9) {
    throw std::logic_error("ROC sweep AUC " + format_double(curve.auc) +
                           " disagrees with rank-statistic AUC " + format_double(check));
  }
  return curve;
}

double mann_whitney_auc(std::span<const double> scores, const std::vector<bool>& labels) {
  int positives = 0;
  int negatives = 0;
  check_inputs(scores, labels, positives, negatives);
  std::vector<double> neg;
  neg.reserve(static_cast<std::size_t>(negatives));
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) neg.push_back(scores[i]);
  }
  std::sort(neg.begin(), neg.end());
  double wins = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    const auto lo = std::lower_bound(neg.begin(), neg.end(), scores[i]);
    const auto hi = std::upper_bound(lo, neg.end(), scores[i]);
    wins += static_cast<double>(neg.end() - hi) + 0.5 * static_cast<double>(hi - lo);
  }
  return wins / (static_cast<double>(positives) * static_cast<double>(negatives));
}

std::vector<std::pair<int, double>> score_distribution(const OutlierScoreTable& table,
                                                       int variant) {
  if (variant < 1 || variant > kScoreVariants) {
    throw ConfigError("score variant must be in 1..6, got " + std::to_string(variant));
  }
  std::vector<double> values(table.users.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = table.scores(static_cast<Eigen::Index>(i), variant - 1);
  }
  std::stable_sort(values.begin(), values.end(), std::greater<>());
  std::vector<std::pair<int, double>> series;
  series.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    series.emplace_back(static_cast<int>(i) + 1, values[i]);
  }
  return series;
}

std::string case_label(std::size_t index) {
  std::string label;
  ++index;
  while (index > 0) {
    --index;
    label.insert(label.begin(), static_cast<char>('A' + index % 26));
    index /= 26;
  }
  return label;
}

void write_roc_csv(std::ostream& out, const RocCurve& curve) {
  out << "fpr,tpr\n";
  for (const auto& pt : curve.points) {
    out << format_double(pt.fpr) << ',' << format_double(pt.tpr) << '\n';
  }
}

void write_auc_summary(std::ostream& out, const std::vector<AucCase>& cases) {
  out << "case,n_min,s_min";
  for (int k = 1; k <= kScoreVariants; ++k) out << ",score_" << k;
  out << '\n';
  for (const auto& c : cases) {
    out << c.label << ',' << c.n_min << ',' << c.s_min;
    for (double a : c.auc) out << ',' << format_double(a);
    out << '\n';
  }
}

void write_distribution_csv(std::ostream& out,
                            const std::vector<std::pair<int, double>>& series) {
  out << "rank,score\n";
  for (const auto& [rank, score] : series) out << rank << ',' << format_double(score) << '\n';
}

}  // namespace insider
