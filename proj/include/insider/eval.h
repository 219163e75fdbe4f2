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

// ROC/AUC against ground-truth labels. The positive class is malicious and
// a LOW score predicts positive.

#ifndef INSIDER_EVAL_H_
#define INSIDER_EVAL_H_

#include <Eigen/Core>
#include <array>
#include <filesystem>
#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "insider/ranker.h"

namespace insider {

using GroundTruth = std::set<std::string>;

// One user id per line; blank lines and lines starting with '#' are skipped.
GroundTruth read_ground_truth(std::istream& in);
GroundTruth read_ground_truth(const std::filesystem::path& path);
void write_ground_truth(std::ostream& out, const GroundTruth& truth);

// Per-user labels aligned with `users`. Throws DataError if a ground-truth
// id is not among `users`.
std::vector<bool> label_users(const std::vector<std::string>& users, const GroundTruth& truth);

struct RocPoint {
  double fpr = 0;
  double tpr = 0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) ... (1,1), both coordinates non-decreasing
  double auc = 0;
  int positives = 0;
  int negatives = 0;
};

// One point per distinct score threshold t (predict positive iff score <= t).
// The AUC is the trapezoidal area, evaluated in integer arithmetic, so it
// depends only on the order of the scores. It is cross-checked against
// mann_whitney_auc; a disagreement above 1e-9 throws std::logic_error.
// Throws DataError without at least one positive and one negative.
RocCurve roc_auc(std::span<const double> scores, const std::vector<bool>& labels);

// P(positive score < negative score) + 1/2 P(equal).
double mann_whitney_auc(std::span<const double> scores, const std::vector<bool>& labels);

// (1-based position, score), scores descending; ties keep vertex order.
std::vector<std::pair<int, double>> score_distribution(const OutlierScoreTable& table,
                                                       int variant);

struct AucCase {
  std::string label;
  int n_min = 0;
  int s_min = 0;
  std::array<double, kScoreVariants> auc{};
};

// "A".."Z", "AA", "AB", ...
std::string case_label(std::size_t index);

// roc.<variant>.csv: fpr,tpr
void write_roc_csv(std::ostream& out, const RocCurve& curve);
// auc_summary.csv: case,n_min,s_min,score_1,...,score_6
void write_auc_summary(std::ostream& out, const std::vector<AucCase>& cases);
// distribution.<variant>.csv: rank,score
void write_distribution_csv(std::ostream& out,
                            const std::vector<std::pair<int, double>>& series);

}  // namespace insider

#endif  // INSIDER_EVAL_H_
