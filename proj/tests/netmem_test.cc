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


#include "entverify/netmem.h"

#include <sstream>

#include "gtest/gtest.h"

namespace entverify::netmem {
namespace {

Network two_nodes(int id_bits = kDefaultIdBits) {
  return Network::build({"N1", "N2"}, {{"N1", "N2"}}, id_bits);
}

TEST(NodeId, RejectsEmptyName) { EXPECT_THROW(NodeId(""), std::invalid_argument); }

TEST(PairId, BigEndianBits) {
  const PairId id{5, 4};
  EXPECT_EQ(id.to_bits(), (std::vector<std::uint8_t>{0, 1, 0, 1}));
}

TEST(Network, BuildValidation) {
  EXPECT_THROW(Network::build({"A", "A"}, {}), std::invalid_argument);
  EXPECT_THROW(Network::build({"A"}, {{"A", "B"}}), std::invalid_argument);
  EXPECT_THROW(Network::build({"A", "B"}, {{"A", "A"}}), std::invalid_argument);
  const auto net = Network::build({"A", "B", "C"}, {{"A", "B"}});
  EXPECT_TRUE(net.linked("B", "A"));
  EXPECT_FALSE(net.linked("A", "C"));
}

TEST(Network, FromTopology) {
  std::istringstream in("# chain\nA B\n\nB C\nC D\n");
  const auto net = Network::from_topology(in);
  EXPECT_EQ(net.nodes().size(), 4u);
  EXPECT_TRUE(net.linked("C", "D"));
  std::istringstream bad("A B C\n");
  EXPECT_THROW(Network::from_topology(bad), std::invalid_argument);
}

TEST(Network, DistributeRequiresLink) {
  auto net = Network::build({"A", "B", "C"}, {{"A", "B"}});
  EXPECT_THROW(net.distribute_pair("A", "C", {}), std::invalid_argument);
  EXPECT_THROW(net.distribute_pair("A", "Z", {}), std::invalid_argument);
  const auto id = net.register_pair("A", "C", {0, 1}, qsim::bell_state({0, 1}));
  EXPECT_EQ(net.pair(id).assumed, BellVariant(0, 1));
}

TEST(Network, SequentialIdsAndLifecycle) {
  auto net = two_nodes();
  const auto p0 = net.distribute_pair("N1", "N2", {1, 1});
  const auto p1 = net.distribute_pair("N2", "N1", {0, 0});
  EXPECT_EQ(p0.value, 0u);
  EXPECT_EQ(p1.value, 1u);
  EXPECT_NEAR(qsim::fidelity(net.pair(p0).joint, qsim::bell_state({1, 1})), 1.0, 1e-12);
  EXPECT_EQ(net.available_pairs(), 2u);
  net.consume_pair(p0);
  EXPECT_EQ(net.available_pairs(), 1u);
  EXPECT_THROW(net.consume_pair(p0), LifecycleError);
  EXPECT_EQ(net.unchecked_pairs("N1", "N2"), std::vector<PairId>{p1});
  EXPECT_THROW(net.pair(PairId{99}), std::out_of_range);
  qsim::RandomSource rng(1);
  EXPECT_THROW(net.measure_half(p0, "N1", qsim::SingleQubitBasis::computational(), rng),
               LifecycleError);
}

TEST(Network, IdSpaceExhaustion) {
  auto net = two_nodes(2);
  for (int i = 0; i < 4; ++i) net.distribute_pair("N1", "N2", {});
  EXPECT_THROW(net.distribute_pair("N1", "N2", {}), std::length_error);
}

TEST(Network, ClassicalAccounting) {
  auto net = two_nodes();
  net.send_classical({"N1", "N2", {1, 0, 1}});
  net.send_classical({"N2", "N1", {1}});
  EXPECT_EQ(net.transcript().size(), 2u);
  EXPECT_EQ(net.transcript().total_bits(), 4u);
  EXPECT_EQ(net.bits_sent("N1"), 3u);
  EXPECT_EQ(net.bits_sent("N2"), 1u);
  EXPECT_THROW(net.send_classical({"N1", "X", {}}), std::invalid_argument);
}

TEST(Network, MeasureHalfCollapsesPartner) {
  auto net = two_nodes();
  const auto id = net.distribute_pair("N1", "N2", {0, 1});
  qsim::RandomSource rng(4);
  const int bit = net.measure_half(id, "N2", qsim::SingleQubitBasis::computational(), rng);
  const auto c = qsim::schmidt_coefficients(net.pair(id).joint);
  EXPECT_NEAR(c[0], 1.0, 1e-12);
  EXPECT_NEAR(net.pair(id).joint.probability_of_one(0), 1.0 - bit, 1e-12);
  EXPECT_THROW(net.pair(id).half_of("N3"), LifecycleError);
}

TEST(Workspace, OwnershipAndLedger) {
  auto net = two_nodes();
  const auto id = net.distribute_pair("N1", "N2", {});
  ResourceLedger ledger;
  Workspace ws(ledger);
  EXPECT_THROW(ws.load_pair(net.pair(id)), LifecycleError);
  const auto rec = net.consume_pair(id);
  const auto [a, b] = ws.load_pair(rec);
  const int p = ws.prepare("N2", qsim::qubit_state(1, 0));
  EXPECT_THROW(ws.apply("N1", qsim::GateKind::H, b), LifecycleError);
  EXPECT_THROW(ws.apply_cnot("N2", p, a), LifecycleError);
  ws.apply_cnot("N2", p, b);
  ws.apply("N2", qsim::GateKind::H, p);
  ws.apply("N1", qsim::GateKind::X, a);
  qsim::RandomSource rng(2);
  ws.measure("N1", a, rng);
  EXPECT_EQ(ledger.pairs_consumed, 1u);
  EXPECT_EQ(ledger.preparations, 1u);
  EXPECT_EQ(ledger.gates_cnot, 1u);
  EXPECT_EQ(ledger.gates_h, 1u);
  EXPECT_EQ(ledger.gates_x, 1u);
  EXPECT_EQ(ledger.measurements, 1u);
  EXPECT_EQ(ws.size(), 3);
  EXPECT_EQ(ws.owner(p), NodeId("N2"));
}

TEST(ResourceLedger, Accumulates) {
  ResourceLedger a, b;
  a.classical_bits_verifier = 3;
  b.classical_bits_other = 2;
  b.count_gate(qsim::GateKind::Z);
  a += b;
  EXPECT_EQ(a.classical_bits(), 5u);
  EXPECT_EQ(a.gates_z, 1u);
}

}  // namespace
}  // namespace entverify::netmem
