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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "insider/error.h"
#include "oracles.h"

namespace insider {
namespace {

double auc(const std::vector<double>& s, const std::vector<bool>& y) {
  return roc_auc(s, y).auc;
}

TEST(Roc, PerfectSeparationIsOne) {
  const auto c = roc_auc(std::vector<double>{0.1, 0.2, 0.8, 0.9}, {true, true, false, false});
  EXPECT_EQ(c.auc, 1.0);
  EXPECT_EQ(c.positives, 2);
  EXPECT_EQ(c.negatives, 2);
  EXPECT_EQ(c.points.front().fpr, 0.0);
  EXPECT_EQ(c.points.front().tpr, 0.0);
  EXPECT_EQ(c.points.back().fpr, 1.0);
  EXPECT_EQ(c.points.back().tpr, 1.0);
}

TEST(Roc, InvertedSeparationIsZero) {
  EXPECT_EQ(auc({0.9, 0.8, 0.1}, {true, true, false}), 0.0);
}

TEST(Roc, AllTiedIsOneHalf) {
  EXPECT_EQ(auc({0.3, 0.3, 0.3, 0.3, 0.3}, {true, false, false, true, false}), 0.5);
}

TEST(Roc, ThreeQuarters) {
  // Pairs (p, n): (0.1, 0.2) win, (0.1, 0.4) win, (0.3, 0.2) loss, (0.3, 0.4) win.
  const std::vector<double> s = {0.1, 0.2, 0.3, 0.4};
  const std::vector<bool> y = {true, false, true, false};
  EXPECT_EQ(auc(s, y), 0.75);
  EXPECT_EQ(testing::pairwise_auc(s, y), 0.75);
}

TEST(Roc, CurveIsMonotone) {
  std::mt19937_64 rng(1);
  std::vector<double> s;
  std::vector<bool> y;
  for (int i = 0; i < 200; ++i) {
    s.push_back(static_cast<double>(rng() % 17));
    y.push_back(rng() % 3 == 0);
  }
  const auto c = roc_auc(s, y);
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    EXPECT_GE(c.points[i].fpr, c.points[i - 1].fpr);
    EXPECT_GE(c.points[i].tpr, c.points[i - 1].tpr);
  }
}

TEST(Roc, ErrorCases) {
  EXPECT_THROW(auc({0.1, 0.2}, {true, true}), DataError);
  EXPECT_THROW(auc({0.1, 0.2}, {false, false}), DataError);
  EXPECT_THROW(auc({0.1, std::numeric_limits<double>::quiet_NaN()}, {true, false}), DataError);
  EXPECT_THROW(auc({0.1, 0.2, 0.3}, {true, false}), DataError);
}

// Properties against the pairwise oracle, plus invariance under strictly
// increasing transforms and complement symmetry under negation.
TEST(Roc, RandomAgreementAndInvariances) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 60);
    std::vector<double> s;
    std::vector<bool> y;
    for (int i = 0; i < n; ++i) {
      s.push_back(static_cast<double>(rng() % 10) / 4.0);
      y.push_back(rng() % 2 == 0);
    }
    y[0] = true;
    y[1] = false;
    const double a = auc(s, y);
    EXPECT_NEAR(a, testing::pairwise_auc(s, y), 1e-12);
    EXPECT_NEAR(a, mann_whitney_auc(s, y), 1e-12);
    std::vector<double> t, neg;
    for (double v : s) {
      t.push_back(std::exp(3 * v) + 5);
      neg.push_back(-v);
    }
    EXPECT_EQ(auc(t, y), a);
    EXPECT_NEAR(auc(neg, y) + a, 1.0, 1e-12);
  }
}

TEST(GroundTruth, ParsesAndLabels) {
  std::istringstream in("# malicious\nU3\n\nU1\n");
  const auto truth = read_ground_truth(in);
  EXPECT_EQ(truth, (GroundTruth{"U1", "U3"}));
  EXPECT_EQ(label_users({"U1", "U2", "U3"}, truth), (std::vector<bool>{true, false, true}));
  EXPECT_THROW(label_users({"U1", "U2"}, truth), DataError);
  std::ostringstream out;
  write_ground_truth(out, truth);
  std::istringstream back(out.str());
  EXPECT_EQ(read_ground_truth(back), truth);
}

TEST(Distribution, DescendingWithRanks) {
  OutlierScoreTable t;
  t.users = {"a", "b", "c"};
  t.scores.setZero(3, kScoreVariants);
  t.scores.col(1) << 0.2, 0.9, 0.5;
  const auto d = score_distribution(t, 2);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0], (std::pair<int, double>{1, 0.9}));
  EXPECT_EQ(d[1], (std::pair<int, double>{2, 0.5}));
  EXPECT_EQ(d[2], (std::pair<int, double>{3, 0.2}));
  EXPECT_THROW(score_distribution(t, 9), ConfigError);
}

TEST(CaseLabel, SpreadsheetStyle) {
  EXPECT_EQ(case_label(0), "A");
  EXPECT_EQ(case_label(25), "Z");
  EXPECT_EQ(case_label(26), "AA");
  EXPECT_EQ(case_label(27), "AB");
}

TEST(Writers, Headers) {
  std::ostringstream roc, summary;
  write_roc_csv(roc, roc_auc(std::vector<double>{0.1, 0.2}, {true, false}));
  EXPECT_EQ(roc.str(), "fpr,tpr\n0,0\n0,1\n1,1\n");
  write_auc_summary(summary, {{"A", 3, 2, {0.5, 0.5, 0.5, 0.5, 0.5, 1}}});
  EXPECT_EQ(summary.str(),
            "case,n_min,s_min,score_1,score_2,score_3,score_4,score_5,score_6\n"
            "A,3,2,0.5,0.5,0.5,0.5,0.5,1\n");
}

}  // namespace
}  // namespace insider
