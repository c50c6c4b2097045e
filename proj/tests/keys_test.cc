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


#include "entverify/keys.h"

#include "entverify/adversary.h"
#include "gtest/gtest.h"

namespace entverify::keys {
namespace {

std::vector<PairId> fill(netmem::Network& net, qsim::BellVariant v, int n) {
  std::vector<PairId> ids;
  for (int p = 0; p < n; ++p) ids.push_back(net.distribute_pair("A", "B", v));
  return ids;
}

TEST(Sift, HonestKeysAgreeForEveryVariant) {
  qsim::RandomSource rng(3);
  for (const auto v : qsim::BellVariant::all()) {
    auto net = netmem::Network::build({"A", "B"}, {{"A", "B"}});
    const auto ids = fill(net, v, 256);
    const auto [a, b] = sift_raw_key(net, "A", "B", ids, rng);
    EXPECT_EQ(a.bits, b.bits) << v.label();
    EXPECT_EQ(a.sources, ids);
    EXPECT_EQ(net.available_pairs(), 0u);
    int ones = 0;
    for (auto x : a.bits) ones += x;
    EXPECT_GT(ones, 80);
    EXPECT_LT(ones, 176);
    EXPECT_EQ(estimate_qber(a, b, 0.25, rng).epsilon, 0.0);
  }
}

TEST(Sift, DiagonalAttackRaisesQber) {
  qsim::RandomSource rng(5);
  auto net = netmem::Network::build({"A", "B"}, {{"A", "B"}});
  const auto ids = fill(net, {0, 0}, 4000);
  adversary::AttackerPolicy policy;
  policy.basis = adversary::AttackBasis::diagonal();
  adversary::compromise_node(net, "B", policy, rng);
  const auto [a, b] = sift_raw_key(net, "A", "B", ids, rng);
  const auto q = estimate_qber(a, b, 0.5, rng);
  EXPECT_NEAR(q.epsilon, 0.5, 0.05);
  EXPECT_EQ(q.disclosed_positions.size(), 2000u);
  EXPECT_EQ(q.remaining_key_a.size(), 2000u);
}

TEST(Sift, ValidatesBeforeConsuming) {
  qsim::RandomSource rng(1);
  auto net = netmem::Network::build({"A", "B", "C"}, {{"A", "B"}, {"A", "C"}});
  const auto good = net.distribute_pair("A", "B", {});
  const auto other = net.distribute_pair("A", "C", {});
  EXPECT_THROW(sift_raw_key(net, "A", "B", {good, other}, rng), netmem::LifecycleError);
  EXPECT_EQ(net.pair(good).status, netmem::PairStatus::kUnchecked);
}

TEST(Qber, Errors) {
  qsim::RandomSource rng(1);
  RawKey a{{0, 1, 1}, {}}, b{{0, 1}, {}};
  EXPECT_THROW(estimate_qber(a, b, 0.5, rng), std::invalid_argument);
  b.bits = {1, 1, 1};
  EXPECT_THROW(estimate_qber(a, b, 0.0, rng), std::invalid_argument);
  EXPECT_THROW(estimate_qber(a, b, 1.0, rng), std::invalid_argument);
  EXPECT_THROW(estimate_qber(RawKey{}, RawKey{}, 0.5, rng), std::invalid_argument);
  const auto q = estimate_qber(a, b, 0.99, rng);
  EXPECT_NEAR(q.epsilon, 1.0 / 3.0, 1e-12);
}

TEST(Hex, MsbFirstWithPadding) {
  EXPECT_EQ(to_hex({1, 0, 1, 0, 1, 1, 1, 1}), "af");
  EXPECT_EQ(to_hex({1, 1}), "c");
  EXPECT_EQ(to_hex({}), "");
}

}  // namespace
}  // namespace entverify::keys
