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

#include <array>
#include <stdexcept>

namespace entverify::teleport {

using qsim::GateKind;

CorrectionOp correction_operator(BellVariant assumed, int b1, int b2) {
  if ((b1 | b2) & ~1) throw std::invalid_argument("teleport bits must be 0/1");
  // The X exponent flips with i^j and the Z exponent with i.
  const int x = b2 ^ (assumed.i ^ assumed.j);
  const int z = b1 ^ assumed.i;
  return {x, z};
}

TeleportBits teleport_send(netmem::Workspace& ws, const NodeId& sender,
                           int payload, int sender_half,
                           qsim::RandomSource& rng) {
  ws.apply_cnot(sender, payload, sender_half);
  ws.apply(sender, GateKind::H, payload);
  TeleportBits bits;
  bits.b1 = ws.measure(sender, payload, rng);
  bits.b2 = ws.measure(sender, sender_half, rng);
  return bits;
}

void apply_correction(netmem::Workspace& ws, const NodeId& receiver,
                      int receiver_half, CorrectionOp op) {
  if (op.z_exp) ws.apply(receiver, GateKind::Z, receiver_half);
  if (op.x_exp) ws.apply(receiver, GateKind::X, receiver_half);
}

TeleportOutcome teleport_state(netmem::Network& net, const NodeId& sender,
                               const NodeId& receiver, PairId pair,
                               const qsim::PureState& payload,
                               qsim::RandomSource& rng) {
  if (!net.pair(pair).shared_by(sender, receiver)) {
    throw netmem::LifecycleError("pair " + std::to_string(pair.value) +
                                 " is not shared by " + sender.name() +
                                 " and " + receiver.name());
  }
  const netmem::EntangledPairRecord rec = net.consume_pair(pair);
  netmem::ResourceLedger ledger;
  netmem::Workspace ws(ledger);
  const int q_payload = ws.prepare(sender, payload);
  const auto [qa, qb] = ws.load_pair(rec);
  const int q_send = rec.owner_a == sender ? qa : qb;
  const int q_recv = rec.owner_a == sender ? qb : qa;

  const TeleportBits bits = teleport_send(ws, sender, q_payload, q_send, rng);
  net.send_classical({sender, receiver,
                      {static_cast<std::uint8_t>(bits.b1),
                       static_cast<std::uint8_t>(bits.b2)}});
  ledger.classical_bits_other += 2;
  apply_correction(ws, receiver, q_recv,
                   correction_operator(rec.assumed, bits.b1, bits.b2));

  const std::array<int, 1> keep{q_recv};
  return {bits.b1, bits.b2, qsim::extract(ws.state(), keep), ledger};
}

SwapResult swap_via_neighbor(netmem::Network& net, const NodeId& n1,
                             const NodeId& n3, const NodeId& n2, PairId pair_a,
                             PairId pair_b, qsim::RandomSource& rng) {
  if (!net.pair(pair_a).shared_by(n1, n3) ||
      !net.pair(pair_b).shared_by(n3, n2)) {
    throw netmem::LifecycleError("swap: pairs " + std::to_string(pair_a.value) +
                                 "/" + std::to_string(pair_b.value) +
                                 " do not link " + n1.name() + "-" +
                                 n3.name() + "-" + n2.name());
  }
  const netmem::EntangledPairRecord ra = net.consume_pair(pair_a);
  const netmem::EntangledPairRecord rb = net.consume_pair(pair_b);
  netmem::ResourceLedger ledger;
  netmem::Workspace ws(ledger);
  const auto [a0, a1] = ws.load_pair(ra);
  const auto [b0, b1] = ws.load_pair(rb);
  const int mid_a = ra.owner_a == n3 ? a0 : a1;
  const int end_1 = ra.owner_a == n3 ? a1 : a0;
  const int mid_b = rb.owner_a == n3 ? b0 : b1;
  const int end_2 = rb.owner_a == n3 ? b1 : b0;

  ws.apply_cnot(n3, mid_a, mid_b);
  ws.apply(n3, GateKind::H, mid_a);
  const int p = ws.measure(n3, mid_a, rng);
  const int q = ws.measure(n3, mid_b, rng);
  const BellVariant announced = qsim::bell_variant_from_circuit_bits(p, q);

  const std::vector<std::uint8_t> bits{announced.i, announced.j};
  net.send_classical({n3, n1, bits});
  net.send_classical({n3, n2, bits});

  const std::array<int, 2> keep{end_1, end_2};
  const BellVariant variant = announced ^ ra.assumed ^ rb.assumed;
  const PairId id =
      net.register_pair(n1, n2, variant, qsim::extract(ws.state(), keep));
  return {id, announced, variant};
}

ChainResult swap_chain(netmem::Network& net, const std::vector<NodeId>& path,
                       const std::vector<PairId>& pairs,
                       qsim::RandomSource& rng) {
  if (path.size() < 3 || pairs.size() + 1 != path.size()) {
    throw std::invalid_argument(
        "swap_chain needs at least 3 nodes and one pair per hop");
  }
  for (std::size_t h = 0; h < pairs.size(); ++h) {
    if (!net.pair(pairs[h]).shared_by(path[h], path[h + 1])) {
      throw netmem::LifecycleError("pair " + std::to_string(pairs[h].value) +
                                   " does not link " + path[h].name() + " and " +
                                   path[h + 1].name());
    }
  }
  ChainResult result{pairs[0], net.pair(pairs[0]).assumed, {}};
  for (std::size_t h = 1; h < pairs.size(); ++h) {
    const SwapResult hop = swap_via_neighbor(net, path[0], path[h], path[h + 1],
                                             result.pair, pairs[h], rng);
    result.pair = hop.pair;
    result.variant = hop.variant;
    result.announced.push_back(hop.announced);
  }
  return result;
}

}  // namespace entverify::teleport
