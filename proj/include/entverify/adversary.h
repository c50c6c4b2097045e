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

#ifndef ENTVERIFY_ADVERSARY_H
#define ENTVERIFY_ADVERSARY_H

// Compromised-node attacker: measures its halves of shared pairs in a chosen
// basis (destroying the entanglement) and may lie on the classical channel.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entverify/netmem.h"
#include "entverify/qsim.h"

namespace entverify::adversary {

using netmem::NodeId;
using netmem::PairId;

class UnsupportedAttack : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct AttackBasis {
  enum class Kind { kComputational, kDiagonal, kFixed, kHaarPerPair };

  Kind kind = Kind::kComputational;
  /// Used only for kFixed.
  qsim::SingleQubitBasis fixed = qsim::SingleQubitBasis::computational();

  static AttackBasis computational() { return {}; }
  static AttackBasis diagonal() { return {Kind::kDiagonal}; }
  static AttackBasis haar() { return {Kind::kHaarPerPair}; }
  static AttackBasis of(const qsim::SingleQubitBasis& b) {
    return {Kind::kFixed, b};
  }

  /// Accepts `computational`, `diagonal`, `haar` and `angle:<theta>,<phi>`
  /// (radians, a = cos(theta/2), b = e^{i phi} sin(theta/2)).
  static AttackBasis parse(std::string_view text);
  std::string label() const;
};

enum class ClassicalBehavior { kHonestProtocol, kRandomBits };

/// Only node capture is simulated. The other two attack families are
/// accepted as values so callers can name them, and rejected on use.
enum class AttackScenario { kNodeCapture, kChannelInterception, kAncillaEntangling };

struct AttackerPolicy {
  AttackBasis basis;
  ClassicalBehavior classical = ClassicalBehavior::kHonestProtocol;
  /// nullopt targets every unchecked pair the node holds.
  std::optional<std::vector<PairId>> target_pairs;
  AttackScenario scenario = AttackScenario::kNodeCapture;
};

struct CompromiseEvent {
  NodeId node;
  AttackerPolicy policy;
  std::vector<std::pair<PairId, int>> collapsed;
};

/// Haar-uniform basis: cos(theta) uniform on [-1, 1], phi uniform on [0, 2pi).
qsim::SingleQubitBasis haar_basis(qsim::RandomSource& rng);

/// The basis the policy uses on its next pair (draws for haar_random_per_pair).
qsim::SingleQubitBasis basis_for_pair(const AttackBasis& basis,
                                      qsim::RandomSource& rng);

/// Measures the node's half of every targeted unchecked pair. The remote half
/// collapses through the joint state. Throws std::invalid_argument for an
/// unknown node and UnsupportedAttack for scenarios other than node capture.
CompromiseEvent compromise_node(netmem::Network& net, const NodeId& node,
                                const AttackerPolicy& policy,
                                qsim::RandomSource& rng);

/// honest_protocol returns `honest` unchanged; random_bits returns fresh
/// uniform bits of the same length.
std::vector<std::uint8_t> attacker_classical_reply(
    const AttackerPolicy& policy, std::span<const std::uint8_t> honest,
    qsim::RandomSource& rng);

}  // namespace entverify::adversary

#endif  // ENTVERIFY_ADVERSARY_H
