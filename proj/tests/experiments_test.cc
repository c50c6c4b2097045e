// Copyright 2026 The entverify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "entverify/experiments.h"

#include <atomic>
#include <cmath>
#include <sstream>

#include "gtest/gtest.h"

namespace entverify::experiments {
namespace {

TEST(Wilson, KnownValues) {
  const auto w = wilson_interval(50, 100);
  EXPECT_NEAR(w.low, 0.4038, 1e-4);
  EXPECT_NEAR(w.high, 0.5962, 1e-4);
  const auto zero = wilson_interval(0, 1000);
  EXPECT_NEAR(zero.low, 0.0, 1e-15);
  EXPECT_GT(zero.high, 0.0);
  EXPECT_THROW(wilson_interval(3, 2), std::invalid_argument);
  EXPECT_THROW(wilson_interval(0, 0), std::invalid_argument);
}

TEST(SampleQubit, EverySchemeIsNormalized) {
  qsim::RandomSource rng(1);
  for (const auto s : {SamplingScheme::kHaar, SamplingScheme::kRealAngleUniform,
                       SamplingScheme::kComponentUniform}) {
    EXPECT_EQ(parse_scheme(to_string(s)), s);
    for (int t = 0; t < 1000; ++t) {
      const auto q = sample_qubit(s, rng);
      EXPECT_NEAR(std::norm(q.alpha) + std::norm(q.beta), 1.0, 1e-12);
    }
  }
  EXPECT_THROW(parse_scheme("gaussian"), std::invalid_argument);
}

TEST(McDetection, IndependentOfJobs) {
  const adversary::AttackerPolicy policy;
  const auto a = mc_detection(ProtocolKind::kAC1, policy, 2, 3000, 9, 1);
  const auto b = mc_detection(ProtocolKind::kAC1, policy, 2, 3000, 9, 4);
  EXPECT_EQ(a.detections, b.detections);
  EXPECT_EQ(a.pairs_sacrificed, 2u);
  ASSERT_TRUE(a.p_closed.has_value());
  EXPECT_DOUBLE_EQ(*a.p_closed, 0.4375);
  EXPECT_LE(a.ci_low, a.p_hat);
  EXPECT_GE(a.ci_high, a.p_hat);
}

TEST(McDetection, ClosedFormOnlyForPlainBases) {
  adversary::AttackerPolicy policy;
  policy.basis = adversary::AttackBasis::haar();
  EXPECT_FALSE(mc_detection(ProtocolKind::kNA2010, policy, 1, 200, 1).p_closed);
  SessionSetup honest;
  honest.attacker_present = false;
  const auto e = mc_detection(ProtocolKind::kAC2, {}, 1, 500, 1, 1, honest);
  EXPECT_FALSE(e.p_closed);
  EXPECT_EQ(e.detections, 0u);
  EXPECT_EQ(e.pairs_sacrificed, 2u);
}

TEST(McDetection, Errors) {
  EXPECT_THROW(mc_detection(ProtocolKind::kAC1, {}, 0, 1000, 1), std::invalid_argument);
  EXPECT_THROW(mc_detection(ProtocolKind::kAC1, {}, 1, 99, 1), std::invalid_argument);
  EXPECT_THROW(detection_curve(ProtocolKind::kAC1, {}, 0, 1000, 1), std::invalid_argument);
}

TEST(McDetection, CurveCoversEveryM) {
  const auto rows = detection_curve(ProtocolKind::kNA2010, {}, 3, 200, 4);
  ASSERT_EQ(rows.size(), 3u);
  for (int m = 1; m <= 3; ++m) EXPECT_EQ(rows[m - 1].m, m);
}

TEST(Histogram, ShapeAndDeterminism) {
  const auto h = fp_histogram(ProtocolKind::kAC1, 20000, SamplingScheme::kHaar, 50, 3, 1);
  const auto h4 = fp_histogram(ProtocolKind::kAC1, 20000, SamplingScheme::kHaar, 50, 3, 4);
  EXPECT_EQ(h.counts, h4.counts);
  EXPECT_EQ(h.empirical_mean, h4.empirical_mean);
  ASSERT_EQ(h.bin_edges.size(), 51u);
  EXPECT_EQ(h.bin_edges.front(), 0.0);
  EXPECT_EQ(h.bin_edges.back(), 1.0);
  std::uint64_t total = 0;
  for (auto c : h.counts) total += c;
  EXPECT_EQ(total, 20000u);
  EXPECT_EQ(h.total, 20000u);
  EXPECT_EQ(h.bin_of(1.0), 49u);
  EXPECT_EQ(h.bin_of(0.0), 0u);
  EXPECT_EQ(h.bin_of(0.5), 25u);
  const auto c = coarsen(h, 5);
  ASSERT_EQ(c.counts.size(), 10u);
  EXPECT_EQ(c.bin_edges.size(), 11u);
  EXPECT_THROW(coarsen(h, 7), std::invalid_argument);
  EXPECT_THROW(fp_histogram(ProtocolKind::kNA2010, 20000, SamplingScheme::kHaar, 10, 1),
               std::invalid_argument);
  EXPECT_THROW(fp_histogram(ProtocolKind::kAC1, 100, SamplingScheme::kHaar, 10, 1),
               std::invalid_argument);
}

TEST(Comparison, TableLayout) {
  const auto rows = comparison_table(8);
  EXPECT_EQ(rows.size(), 8u + 8u + 4u);
  EXPECT_EQ(rows.back().protocol, ProtocolKind::kAC2);
  EXPECT_EQ(rows.back().pairs_sacrificed, 8);
  EXPECT_NEAR(rows.back().p_closed, 1 - std::pow(0.25, 4), 1e-15);
  EXPECT_THROW(comparison_table(1), std::invalid_argument);
}

TEST(MeanCheck, ReportsPaperValueAlongside) {
  const auto m = empirical_mean_check(ProtocolKind::kAC2, SamplingScheme::kHaar, 100000, 5);
  EXPECT_EQ(m.reported_mean, kReportedMeanAC2);
  EXPECT_EQ(m.scheme_label, "haar");
  EXPECT_NEAR(m.mean, 0.75, 0.005);
}

TEST(Csv, Headers) {
  std::ostringstream d, h, c;
  write_detection_csv(d, {});
  write_histogram_csv(h, fp_histogram(ProtocolKind::kAC2, 10000, SamplingScheme::kHaar, 2, 1));
  write_comparison_csv(c, comparison_table(2));
  EXPECT_EQ(d.str(), "protocol,m,pairs_sacrificed,trials,p_hat,ci_low,ci_high,p_closed,seed\n");
  EXPECT_EQ(h.str().substr(0, h.str().find('\n')), "bin_low,bin_high,count,frequency");
  EXPECT_EQ(c.str(),
            "protocol,pairs_sacrificed,p_closed\nNA2010,1,0.125000\nNA2010,2,0.234375\n"
            "AC1,1,0.250000\nAC1,2,0.437500\nAC2,2,0.750000\n");
}

TEST(FormatFixed, Digits) {
  EXPECT_EQ(format_fixed(0.5), "0.500000");
  EXPECT_EQ(format_fixed(0.123456789, 3), "0.123");
}

TEST(ParallelFor, VisitsEachIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(1000, 7, [&](std::uint64_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  parallel_for(0, 3, [](std::uint64_t) { FAIL(); });
}

}  // namespace
}  // namespace entverify::experiments
