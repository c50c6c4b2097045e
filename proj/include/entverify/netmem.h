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

#ifndef ENTVERIFY_NETMEM_H
#define ENTVERIFY_NETMEM_H

// Nodes, quantum memories of identified entangled pairs, a trusted pair
// source and a public authenticated classical channel.
//
// A pair's joint state is kept network-side as one two-qubit register (qubit
// 0 is owner_a's half, qubit 1 is owner_b's half). Node-locality is enforced
// at the operation layer: every quantum operation names the acting node and is
// rejected unless that node owns the touched qubits.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entverify/qsim.h"

namespace entverify::netmem {

using qsim::BellVariant;
using qsim::PureState;

/// Default identifier width k.
inline constexpr int kDefaultIdBits = 16;

/// Raised for pair lifecycle violations (double consumption, ownership).
class LifecycleError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NodeId {
 public:
  NodeId() = default;
  NodeId(std::string name);  // NOLINT: implicit from names is convenient
  NodeId(const char* name) : NodeId(std::string(name)) {}  // NOLINT

  const std::string& name() const { return name_; }
  friend auto operator<=>(const NodeId&, const NodeId&) = default;

 private:
  std::string name_;
};

std::ostream& operator<<(std::ostream& out, const NodeId& node);

struct PairId {
  std::uint64_t value = 0;
  int id_bits = kDefaultIdBits;

  friend bool operator==(const PairId& a, const PairId& b) {
    return a.value == b.value;
  }
  friend auto operator<=>(const PairId& a, const PairId& b) {
    return a.value <=> b.value;
  }
  /// Big-endian k-bit encoding used on the classical channel.
  std::vector<std::uint8_t> to_bits() const;
};

enum class PairStatus { kUnchecked, kConsumed };

struct EntangledPairRecord {
  PairId id;
  NodeId owner_a;
  NodeId owner_b;
  BellVariant assumed;
  PureState joint;
  PairStatus status = PairStatus::kUnchecked;

  bool shared_by(const NodeId& x, const NodeId& y) const {
    return (owner_a == x && owner_b == y) || (owner_a == y && owner_b == x);
  }
  /// 0 or 1: which qubit of `joint` belongs to `node`. Throws LifecycleError
  /// if the node holds neither half.
  int half_of(const NodeId& node) const;
};

struct ClassicalMessage {
  NodeId from;
  NodeId to;
  std::vector<std::uint8_t> payload;

  std::size_t bit_count() const { return payload.size(); }
};

/// Append-only record of every classical message. The adversary sees all of it.
class Transcript {
 public:
  void append(ClassicalMessage msg);
  std::span<const ClassicalMessage> messages() const { return messages_; }
  std::size_t size() const { return messages_.size(); }
  std::size_t total_bits() const { return total_bits_; }

 private:
  std::vector<ClassicalMessage> messages_;
  std::size_t total_bits_ = 0;
};

/// Per-round resource counts. Gates and measurements are totals over both
/// parties; classical bits are split by protocol role.
struct ResourceLedger {
  std::uint64_t classical_bits_verifier = 0;
  std::uint64_t classical_bits_other = 0;
  std::uint64_t gates_h = 0;
  std::uint64_t gates_x = 0;
  std::uint64_t gates_z = 0;
  std::uint64_t gates_cnot = 0;
  std::uint64_t measurements = 0;
  std::uint64_t preparations = 0;
  std::uint64_t rng_draws = 0;
  std::uint64_t pairs_consumed = 0;

  std::uint64_t classical_bits() const {
    return classical_bits_verifier + classical_bits_other;
  }
  void count_gate(qsim::GateKind gate);
  ResourceLedger& operator+=(const ResourceLedger& other);
  friend bool operator==(const ResourceLedger&, const ResourceLedger&) = default;
};

class Network {
 public:
  /// Throws std::invalid_argument for duplicate nodes or dangling links.
  static Network build(const std::vector<NodeId>& nodes,
                       const std::vector<std::pair<NodeId, NodeId>>& links,
                       int id_bits = kDefaultIdBits);

  /// One link per line, `nodeA nodeB`; nodes are declared by first use.
  /// Blank lines and lines starting with '#' are skipped.
  static Network from_topology(std::istream& in, int id_bits = kDefaultIdBits);

  int id_bits() const { return id_bits_; }
  const std::vector<NodeId>& nodes() const { return nodes_; }
  bool has_node(const NodeId& node) const;
  bool linked(const NodeId& a, const NodeId& b) const;

  /// Trusted source: a new pair in exactly bell_state(v), linked endpoints
  /// only. Ids are sequential and never reused.
  PairId distribute_pair(const NodeId& a, const NodeId& b, BellVariant v);

  /// Registers a pair created by swapping; the endpoints need not be linked.
  PairId register_pair(const NodeId& a, const NodeId& b, BellVariant assumed,
                       PureState joint);

  void send_classical(ClassicalMessage msg);

  /// Marks the pair consumed and returns a copy for protocol use.
  EntangledPairRecord consume_pair(PairId id);

  /// Measures `node`'s half of an unchecked pair in place.
  int measure_half(PairId id, const NodeId& node,
                   const qsim::SingleQubitBasis& basis, qsim::RandomSource& rng);

  const EntangledPairRecord& pair(PairId id) const;
  /// Unchecked pairs shared by the two nodes, in id order.
  std::vector<PairId> unchecked_pairs(const NodeId& a, const NodeId& b) const;
  /// Unchecked pairs with a half at `node`, in id order.
  std::vector<PairId> unchecked_pairs_at(const NodeId& node) const;
  std::size_t available_pairs() const { return available_; }

  const Transcript& transcript() const { return transcript_; }
  std::uint64_t bits_sent(const NodeId& node) const;

 private:
  Network(std::vector<NodeId> nodes, int id_bits);
  void require_node(const NodeId& node) const;
  EntangledPairRecord& mutable_pair(PairId id);
  PairId allocate(const NodeId& a, const NodeId& b, BellVariant assumed,
                  PureState joint);

  std::vector<NodeId> nodes_;
  std::vector<std::pair<NodeId, NodeId>> links_;
  int id_bits_;
  std::uint64_t next_id_ = 0;
  std::size_t available_ = 0;
  std::vector<EntangledPairRecord> pairs_;
  Transcript transcript_;
  std::map<NodeId, std::uint64_t> bits_sent_;
};

/// A local register assembled from consumed pairs and freshly prepared
/// qubits, with per-qubit node ownership. Operations count into a ledger.
class Workspace {
 public:
  explicit Workspace(ResourceLedger& ledger) : ledger_(&ledger) {}

  /// Adds a qubit prepared by `owner`; returns its index.
  int prepare(const NodeId& owner, const PureState& single_qubit);
  /// Appends both halves of a consumed pair; returns the indices of
  /// (owner_a's half, owner_b's half).
  std::pair<int, int> load_pair(const EntangledPairRecord& record);

  void apply(const NodeId& actor, qsim::GateKind gate, int q);
  void apply_cnot(const NodeId& actor, int control, int target);
  int measure(const NodeId& actor, int q, qsim::RandomSource& rng);

  const PureState& state() const { return *state_; }
  const NodeId& owner(int q) const { return owners_.at(q); }
  int size() const { return static_cast<int>(owners_.size()); }
  ResourceLedger& ledger() { return *ledger_; }

 private:
  void require_owner(const NodeId& actor, int q) const;
  void append(const PureState& s);

  ResourceLedger* ledger_;
  std::optional<PureState> state_;
  std::vector<NodeId> owners_;
};

}  // namespace entverify::netmem

#endif  // ENTVERIFY_NETMEM_H
