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


#include "entverify/adversary.h"

#include <cmath>

#include "gtest/gtest.h"

namespace entverify::adversary {
namespace {

TEST(AttackBasis, Parse) {
  EXPECT_EQ(AttackBasis::parse("computational").kind, AttackBasis::Kind::kComputational);
  EXPECT_EQ(AttackBasis::parse("diagonal").kind, AttackBasis::Kind::kDiagonal);
  EXPECT_EQ(AttackBasis::parse("haar").kind, AttackBasis::Kind::kHaarPerPair);
  const auto b = AttackBasis::parse("angle:1.5707963267948966,0");
  EXPECT_EQ(b.kind, AttackBasis::Kind::kFixed);
  EXPECT_NEAR(std::abs(b.fixed.a() - b.fixed.b()), 0.0, 1e-12);
  EXPECT_THROW(AttackBasis::parse("angle:1"), std::invalid_argument);
  EXPECT_THROW(AttackBasis::parse("angle:x,1"), std::invalid_argument);
  EXPECT_THROW(AttackBasis::parse("angle:1,2z"), std::invalid_argument);
  EXPECT_THROW(AttackBasis::parse("bogus"), std::invalid_argument);
}

TEST(HaarBasis, BlochZIsUniform) {
  qsim::RandomSource rng(8);
  const int n = 50000;
  double sum = 0, sum_sq = 0;
  for (int t = 0; t < n; ++t) {
    const auto b = haar_basis(rng);
    const double z = std::norm(b.a()) - std::norm(b.b());
    sum += z;
    sum_sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sum_sq / n, 1.0 / 3.0, 0.01);
}

TEST(Compromise, CollapsesTargetedPairsToProducts) {
  auto net = netmem::Network::build({"N1", "N2", "N3"}, {{"N1", "N2"}, {"N2", "N3"}});
  const auto p0 = net.distribute_pair("N1", "N2", {0, 0});
  const auto p1 = net.distribute_pair("N2", "N3", {1, 0});
  qsim::RandomSource rng(5);
  AttackerPolicy policy;
  policy.basis = AttackBasis::haar();
  policy.target_pairs = std::vector<PairId>{p1};
  const auto event = compromise_node(net, "N2", policy, rng);
  ASSERT_EQ(event.collapsed.size(), 1u);
  EXPECT_EQ(event.collapsed[0].first, p1);
  EXPECT_NEAR(qsim::schmidt_coefficients(net.pair(p1).joint)[0], 1.0, 1e-9);
  EXPECT_NEAR(qsim::schmidt_coefficients(net.pair(p0).joint)[0], std::sqrt(0.5), 1e-7);

  policy.target_pairs.reset();
  compromise_node(net, "N2", policy, rng);
  EXPECT_NEAR(qsim::schmidt_coefficients(net.pair(p0).joint)[0], 1.0, 1e-9);
}

TEST(Compromise, LocalStateIsTheMeasuredBasisVector) {
  qsim::RandomSource rng(6);
  for (int t = 0; t < 50; ++t) {
    auto net = netmem::Network::build({"N1", "N2"}, {{"N1", "N2"}});
    const auto id = net.distribute_pair("N1", "N2", qsim::BellVariant::all()[t % 4]);
    AttackerPolicy policy;
    policy.basis = AttackBasis::of(haar_basis(rng));
    const auto event = compromise_node(net, "N2", policy, rng);
    const auto u = policy.basis.fixed.vector(event.collapsed.at(0).second);
    const std::array<int, 1> keep{1};
    EXPECT_NEAR(qsim::fidelity(qsim::extract(net.pair(id).joint, keep),
                               qsim::qubit_state(u[0], u[1])),
                1.0, 1e-9);
  }
}

TEST(Compromise, Errors) {
  auto net = netmem::Network::build({"N1", "N2"}, {{"N1", "N2"}});
  qsim::RandomSource rng(1);
  AttackerPolicy policy;
  EXPECT_THROW(compromise_node(net, "N9", policy, rng), std::invalid_argument);
  policy.scenario = AttackScenario::kChannelInterception;
  EXPECT_THROW(compromise_node(net, "N1", policy, rng), UnsupportedAttack);
  policy.scenario = AttackScenario::kAncillaEntangling;
  EXPECT_THROW(compromise_node(net, "N1", policy, rng), UnsupportedAttack);
}

TEST(ClassicalReply, HonestPassesThroughRandomIsUniform) {
  qsim::RandomSource rng(2);
  AttackerPolicy policy;
  const std::vector<std::uint8_t> honest{1, 0};
  EXPECT_EQ(attacker_classical_reply(policy, honest, rng), honest);
  policy.classical = ClassicalBehavior::kRandomBits;
  int ones = 0;
  for (int t = 0; t < 10000; ++t) ones += attacker_classical_reply(policy, honest, rng)[1];
  EXPECT_NEAR(ones / 10000.0, 0.5, 0.03);
}

}  // namespace
}  // namespace entverify::adversary
