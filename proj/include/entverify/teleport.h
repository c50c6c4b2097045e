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

#ifndef ENTVERIFY_TELEPORT_H
#define ENTVERIFY_TELEPORT_H

#include <vector>

#include "entverify/netmem.h"
#include "entverify/qsim.h"

namespace entverify::teleport {

using netmem::NodeId;
using netmem::PairId;
using qsim::BellVariant;

/// U = X^x_exp Z^z_exp (Z applied first).
struct CorrectionOp {
  int x_exp = 0;
  int z_exp = 0;
  friend bool operator==(const CorrectionOp&, const CorrectionOp&) = default;
};

/// Sender bits of one teleportation: b1 from the payload qubit (after H),
/// b2 from the sender's pair half.
struct TeleportBits {
  int b1 = 0;
  int b2 = 0;
};

/// Receiver correction for a channel assumed to be in `assumed`:
///
///   beta_00: X^b2  Z^b1      beta_01: X^!b2 Z^b1
///   beta_10: X^!b2 Z^!b1     beta_11: X^b2  Z^!b1
CorrectionOp correction_operator(BellVariant assumed, int b1, int b2);

/// Sender half of the protocol: CNOT(payload -> sender_half), H(payload), then
/// measures payload (b1) and sender_half (b2).
TeleportBits teleport_send(netmem::Workspace& ws, const NodeId& sender,
                           int payload, int sender_half,
                           qsim::RandomSource& rng);

/// Applies Z^z_exp then X^x_exp to the receiver's half. Identity factors are
/// not applied and not counted.
void apply_correction(netmem::Workspace& ws, const NodeId& receiver,
                      int receiver_half, CorrectionOp op);

struct TeleportOutcome {
  int b1;
  int b2;
  qsim::PureState received;
  netmem::ResourceLedger ledger;
};

/// Teleports a single-qubit `payload` from `sender` to `receiver` over `pair`
/// (consumed). The two bits travel over the classical channel.
TeleportOutcome teleport_state(netmem::Network& net, const NodeId& sender,
                               const NodeId& receiver, PairId pair,
                               const qsim::PureState& payload,
                               qsim::RandomSource& rng);

struct SwapResult {
  PairId pair;
  /// Variant announced by the middle node's Bell measurement.
  BellVariant announced;
  /// Variant the end nodes now assume: announced XOR both input variants.
  BellVariant variant;
};

/// `n3` Bell-measures its halves of pair_a (n1, n3) and pair_b (n3, n2) and
/// announces the two bits to both ends. Both input pairs are consumed and a new
/// (n1, n2) pair is registered.
SwapResult swap_via_neighbor(netmem::Network& net, const NodeId& n1,
                             const NodeId& n3, const NodeId& n2, PairId pair_a,
                             PairId pair_b, qsim::RandomSource& rng);

struct ChainResult {
  PairId pair;
  BellVariant variant;
  std::vector<BellVariant> announced;
};

/// Left-to-right swapping along `path`, where pairs[i] links path[i] and
/// path[i+1]. The end-pair variant is the XOR of every announced variant and
/// every input variant.
ChainResult swap_chain(netmem::Network& net, const std::vector<NodeId>& path,
                       const std::vector<PairId>& pairs,
                       qsim::RandomSource& rng);

}  // namespace entverify::teleport

#endif  // ENTVERIFY_TELEPORT_H
