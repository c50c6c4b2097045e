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

#ifndef ENTVERIFY_VERIFY_H
#define ENTVERIFY_VERIFY_H

// Entanglement verification protocols NA2010, AC1 and AC2.
//
// Each round is played between a Verifier and an Other Party that share
// entangled pairs. A round that does not flag the Other Party is reported as
// not detected; the protocols never produce a positive verdict on honest
// pairs.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entverify/adversary.h"
#include "entverify/netmem.h"
#include "entverify/qsim.h"

namespace entverify::verify {

using netmem::NodeId;
using netmem::PairId;
using netmem::ResourceLedger;
using qsim::Amplitude;
using qsim::BellVariant;

enum class ProtocolKind { kNA2010, kAC1, kAC2 };

std::string to_string(ProtocolKind kind);
/// Case-insensitive "na2010", "ac1" or "ac2".
ProtocolKind parse_protocol(std::string_view name);
/// Pairs consumed per round: 1, 1 and 2.
int pairs_per_round(ProtocolKind kind);

struct RoundTranscript {
  ProtocolKind protocol = ProtocolKind::kNA2010;
  std::vector<PairId> pair_ids;
  // NA2010
  std::optional<int> x, y, a, b;
  // AC1
  std::optional<int> s;
  // AC1 and AC2, as received by the Verifier.
  std::optional<int> b1, b2;
  // NA2010 and AC1 verdict
  std::optional<int> v;
  // AC2 verdict bits
  std::optional<int> v1, v2;
  std::vector<netmem::ClassicalMessage> messages;
};

struct RoundResult {
  bool detected = false;
  RoundTranscript transcript;
  ResourceLedger ledger;
};

struct SessionResult {
  std::vector<RoundResult> rounds;
  int m = 0;
  bool detected_any = false;
  std::uint64_t pairs_sacrificed = 0;
  ResourceLedger ledger;
};

/// Verdict bit v of NA2010: 1 iff one of
///   x=y=0, i=j, a!=b      x=y=0, i!=j, a=b
///   x=y=1, i=0, a!=b      x=y=1, i=1, a=b
int decide_na2010(int x, int y, BellVariant assumed, int a, int b);

/// AC2 flags every (v1, v2) other than the honest outcome (i, j).
bool decide_ac2(BellVariant assumed, int v1, int v2);

/// `other_policy` is the Other Party's classical behaviour when it is
/// compromised; null means it follows the protocol.
RoundResult na2010_round(netmem::Network& net, const NodeId& verifier,
                         const NodeId& other, PairId pair,
                         qsim::RandomSource& rng,
                         const adversary::AttackerPolicy* other_policy = nullptr);

RoundResult ac1_round(netmem::Network& net, const NodeId& verifier,
                      const NodeId& other, PairId pair, qsim::RandomSource& rng,
                      const adversary::AttackerPolicy* other_policy = nullptr);

RoundResult ac2_round(netmem::Network& net, const NodeId& verifier,
                      const NodeId& other, PairId pair_checked,
                      PairId pair_channel, qsim::RandomSource& rng,
                      const adversary::AttackerPolicy* other_policy = nullptr);

/// Runs m rounds over the lowest-id unchecked pairs shared by the two nodes.
/// Throws std::invalid_argument before touching any pair if fewer than
/// m * pairs_per_round(kind) are available.
SessionResult run_verification(
    netmem::Network& net, ProtocolKind kind, const NodeId& verifier,
    const NodeId& other, int m, qsim::RandomSource& rng,
    const adversary::AttackerPolicy* other_policy = nullptr);

/// Session detection probability against a computational or diagonal
/// attacker: 1-(7/8)^m, 1-(3/4)^m, 1-(1/4)^m.
double closed_form_pm(ProtocolKind kind, int m);

/// Per-round AC1 detection probability when the Verifier's corrected qubit is
/// alpha|0> + beta|1>, for a fixed selector: |beta|^2 (s=0) or
/// |alpha-beta|^2/2 (s=1).
double ac1_selector_detection_prob(int s, Amplitude alpha, Amplitude beta);

/// Average of the two selector cases: (|beta|^2 + |alpha-beta|^2/2) / 2.
double ac1_detection_prob(Amplitude alpha, Amplitude beta);

/// State after CNOT, H, CNOT (control on the first qubit) applied to
/// (alpha|0> + beta|1>) (x) (gamma|0> + delta|1>).
qsim::PureState ac2_joint_state(Amplitude alpha, Amplitude beta,
                                Amplitude gamma, Amplitude delta);

/// 1 - |alpha gamma + beta delta|^2 / 2.
double ac2_detection_prob(Amplitude alpha, Amplitude beta, Amplitude gamma,
                          Amplitude delta);

}  // namespace entverify::verify

#endif  // ENTVERIFY_VERIFY_H
