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


#include "entverify/teleport.h"

#include <set>

#include "entverify/adversary.h"
#include "gtest/gtest.h"

namespace entverify::teleport {
namespace {

using qsim::Amplitude;
using qsim::PureState;

PureState random_qubit(qsim::RandomSource& rng) {
  const auto b = adversary::haar_basis(rng);
  return qsim::qubit_state(b.a(), b.b());
}

// Runs the sender circuit on payload (x) pair, keeps the (b1, b2) branch and
// applies the correction, without any randomness.
PureState teleport_branch(const PureState& payload, BellVariant v, int b1, int b2) {
  PureState s = qsim::product(payload, qsim::bell_state(v));
  s.apply_cnot(0, 1);
  s.apply(qsim::GateKind::H, 0);
  const std::size_t base = static_cast<std::size_t>(b1 * 4 + b2 * 2);
  PureState out(1, {s.amplitude(base) * 2.0, s.amplitude(base + 1) * 2.0});
  const CorrectionOp op = correction_operator(v, b1, b2);
  if (op.z_exp) out.apply(qsim::GateKind::Z, 0);
  if (op.x_exp) out.apply(qsim::GateKind::X, 0);
  return out;
}

TEST(Correction, TableForEveryVariant) {
  EXPECT_EQ(correction_operator({0, 0}, 1, 0), (CorrectionOp{0, 1}));
  EXPECT_EQ(correction_operator({0, 1}, 0, 0), (CorrectionOp{1, 0}));
  EXPECT_EQ(correction_operator({1, 0}, 0, 0), (CorrectionOp{1, 1}));
  EXPECT_EQ(correction_operator({1, 1}, 0, 1), (CorrectionOp{1, 1}));
  EXPECT_THROW(correction_operator({0, 0}, 2, 0), std::invalid_argument);
}

TEST(Correction, AllSixteenBranchesAreExact) {
  qsim::RandomSource rng(17);
  for (int t = 0; t < 20; ++t) {
    const PureState psi = random_qubit(rng);
    for (const auto v : BellVariant::all()) {
      for (int b1 = 0; b1 < 2; ++b1) {
        for (int b2 = 0; b2 < 2; ++b2) {
          EXPECT_NEAR(qsim::fidelity(teleport_branch(psi, v, b1, b2), psi), 1.0, 1e-9)
              << v.label() << " b1=" << b1 << " b2=" << b2;
        }
      }
    }
  }
}

TEST(TeleportState, HaarPayloadArrivesIntact) {
  qsim::RandomSource rng(23);
  std::set<std::pair<int, int>> seen;
  for (int t = 0; t < 200; ++t) {
    auto net = netmem::Network::build({"A", "B"}, {{"A", "B"}});
    const auto v = BellVariant::all()[t % 4];
    const auto id = t % 2 ? net.distribute_pair("A", "B", v) : net.distribute_pair("B", "A", v);
    const PureState psi = random_qubit(rng);
    const auto out = teleport_state(net, "A", "B", id, psi, rng);
    EXPECT_NEAR(qsim::fidelity(out.received, psi), 1.0, 1e-9);
    EXPECT_EQ(out.ledger.classical_bits_other, 2u);
    EXPECT_EQ(net.transcript().total_bits(), 2u);
    EXPECT_EQ(net.available_pairs(), 0u);
    seen.insert({out.b1, out.b2});
  }
  EXPECT_EQ(seen.size(), 4u);
}

TEST(TeleportState, RejectsForeignOrConsumedPair) {
  auto net = netmem::Network::build({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
  const auto id = net.distribute_pair("B", "C", {});
  qsim::RandomSource rng(1);
  const auto psi = qsim::qubit_state(1, 0);
  EXPECT_THROW(teleport_state(net, "A", "B", id, psi, rng), netmem::LifecycleError);
  teleport_state(net, "B", "C", id, psi, rng);
  EXPECT_THROW(teleport_state(net, "B", "C", id, psi, rng), netmem::LifecycleError);
}

TEST(Swap, EveryVariantCombinationYieldsAnnouncedPair) {
  qsim::RandomSource rng(31);
  for (const auto va : BellVariant::all()) {
    for (const auto vb : BellVariant::all()) {
      std::set<std::string> announced;
      for (int t = 0; t < 40; ++t) {
        auto net = netmem::Network::build({"N1", "N2", "N3"}, {{"N1", "N3"}, {"N3", "N2"}});
        const auto pa = t % 2 ? net.distribute_pair("N1", "N3", va)
                              : net.distribute_pair("N3", "N1", va);
        const auto pb = net.distribute_pair("N3", "N2", vb);
        const auto res = swap_via_neighbor(net, "N1", "N3", "N2", pa, pb, rng);
        EXPECT_EQ(res.variant, res.announced ^ va ^ vb);
        const auto& rec = net.pair(res.pair);
        EXPECT_TRUE(rec.shared_by("N1", "N2"));
        const std::array<int, 2> order{rec.owner_a == netmem::NodeId("N1") ? 0 : 1,
                                       rec.owner_a == netmem::NodeId("N1") ? 1 : 0};
        EXPECT_NEAR(qsim::fidelity(qsim::extract(rec.joint, order),
                                   qsim::bell_state(res.variant)),
                    1.0, 1e-9);
        announced.insert(res.announced.label());
      }
      EXPECT_EQ(announced.size(), 4u);
    }
  }
}

TEST(Swap, ChainValidation) {
  auto net = netmem::Network::build({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
  const auto p0 = net.distribute_pair("A", "B", {});
  const auto p1 = net.distribute_pair("B", "C", {});
  qsim::RandomSource rng(3);
  EXPECT_THROW(swap_chain(net, {"A", "B"}, {p0}, rng), std::invalid_argument);
  EXPECT_THROW(swap_chain(net, {"A", "C", "B"}, {p0, p1}, rng), netmem::LifecycleError);
  const auto res = swap_chain(net, {"A", "B", "C"}, {p0, p1}, rng);
  EXPECT_EQ(res.announced.size(), 1u);
  EXPECT_EQ(net.transcript().total_bits(), 4u);
}

}  // namespace
}  // namespace entverify::teleport
