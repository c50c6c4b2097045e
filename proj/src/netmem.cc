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

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace entverify::netmem {

NodeId::NodeId(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw std::invalid_argument("node name must not be empty");
}

std::ostream& operator<<(std::ostream& out, const NodeId& node) {
  return out << node.name();
}

std::vector<std::uint8_t> PairId::to_bits() const {
  std::vector<std::uint8_t> bits(id_bits);
  for (int b = 0; b < id_bits; ++b) {
    bits[b] = static_cast<std::uint8_t>((value >> (id_bits - 1 - b)) & 1);
  }
  return bits;
}

int EntangledPairRecord::half_of(const NodeId& node) const {
  if (owner_a == node) return 0;
  if (owner_b == node) return 1;
  throw LifecycleError("node " + node.name() + " holds no half of pair " +
                       std::to_string(id.value));
}

void Transcript::append(ClassicalMessage msg) {
  total_bits_ += msg.bit_count();
  messages_.push_back(std::move(msg));
}

void ResourceLedger::count_gate(qsim::GateKind gate) {
  switch (gate) {
    case qsim::GateKind::H: ++gates_h; break;
    case qsim::GateKind::X: ++gates_x; break;
    case qsim::GateKind::Z: ++gates_z; break;
  }
}

ResourceLedger& ResourceLedger::operator+=(const ResourceLedger& o) {
  classical_bits_verifier += o.classical_bits_verifier;
  classical_bits_other += o.classical_bits_other;
  gates_h += o.gates_h;
  gates_x += o.gates_x;
  gates_z += o.gates_z;
  gates_cnot += o.gates_cnot;
  measurements += o.measurements;
  preparations += o.preparations;
  rng_draws += o.rng_draws;
  pairs_consumed += o.pairs_consumed;
  return *this;
}

////////////////////////////////////////////////////////////
// Network

Network::Network(std::vector<NodeId> nodes, int id_bits)
    : nodes_(std::move(nodes)), id_bits_(id_bits) {
  if (id_bits < 1 || id_bits > 63) {
    throw std::invalid_argument("id_bits must be in [1, 63]");
  }
}

Network Network::build(const std::vector<NodeId>& nodes,
                       const std::vector<std::pair<NodeId, NodeId>>& links,
                       int id_bits) {
  std::vector<NodeId> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate node name");
  }
  Network net(nodes, id_bits);
  for (const auto& [a, b] : links) {
    if (!net.has_node(a) || !net.has_node(b)) {
      throw std::invalid_argument("link " + a.name() + "-" + b.name() +
                                  " references an unknown node");
    }
    if (a == b) throw std::invalid_argument("self link on " + a.name());
    if (!net.linked(a, b)) net.links_.emplace_back(a, b);
  }
  return net;
}

Network Network::from_topology(std::istream& in, int id_bits) {
  std::vector<NodeId> nodes;
  std::vector<std::pair<NodeId, NodeId>> links;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a) || a[0] == '#') continue;
    if (!(fields >> b) || (fields >> extra)) {
      throw std::invalid_argument("topology line " + std::to_string(line_no) +
                                  ": expected 'nodeA nodeB'");
    }
    for (const auto& name : {a, b}) {
      if (std::find(nodes.begin(), nodes.end(), NodeId(name)) == nodes.end()) {
        nodes.emplace_back(name);
      }
    }
    links.emplace_back(a, b);
  }
  return build(nodes, links, id_bits);
}

bool Network::has_node(const NodeId& node) const {
  return std::find(nodes_.begin(), nodes_.end(), node) != nodes_.end();
}

bool Network::linked(const NodeId& a, const NodeId& b) const {
  return std::any_of(links_.begin(), links_.end(), [&](const auto& l) {
    return (l.first == a && l.second == b) || (l.first == b && l.second == a);
  });
}

void Network::require_node(const NodeId& node) const {
  if (!has_node(node)) throw std::invalid_argument("unknown node " + node.name());
}

PairId Network::allocate(const NodeId& a, const NodeId& b, BellVariant assumed,
                         PureState joint) {
  require_node(a);
  require_node(b);
  if (a == b) throw std::invalid_argument("pair endpoints must differ");
  if (joint.num_qubits() != 2) {
    throw std::invalid_argument("pair state must have exactly two qubits");
  }
  if (next_id_ >= (std::uint64_t{1} << id_bits_)) {
    throw std::length_error("pair id space of " + std::to_string(id_bits_) +
                            " bits exhausted");
  }
  const PairId id{next_id_++, id_bits_};
  pairs_.push_back({id, a, b, assumed, std::move(joint), PairStatus::kUnchecked});
  ++available_;
  return id;
}

PairId Network::distribute_pair(const NodeId& a, const NodeId& b,
                                BellVariant v) {
  require_node(a);
  require_node(b);
  if (a != b && !linked(a, b)) {
    throw std::invalid_argument("no link between " + a.name() + " and " +
                                b.name());
  }
  return allocate(a, b, v, qsim::bell_state(v));
}

PairId Network::register_pair(const NodeId& a, const NodeId& b,
                              BellVariant assumed, PureState joint) {
  return allocate(a, b, assumed, std::move(joint));
}

void Network::send_classical(ClassicalMessage msg) {
  require_node(msg.from);
  require_node(msg.to);
  bits_sent_[msg.from] += msg.bit_count();
  transcript_.append(std::move(msg));
}

EntangledPairRecord& Network::mutable_pair(PairId id) {
  if (id.value >= pairs_.size()) {
    throw std::out_of_range("unknown pair id " + std::to_string(id.value));
  }
  return pairs_[id.value];
}

const EntangledPairRecord& Network::pair(PairId id) const {
  if (id.value >= pairs_.size()) {
    throw std::out_of_range("unknown pair id " + std::to_string(id.value));
  }
  return pairs_[id.value];
}

EntangledPairRecord Network::consume_pair(PairId id) {
  EntangledPairRecord& rec = mutable_pair(id);
  if (rec.status == PairStatus::kConsumed) {
    throw LifecycleError("pair " + std::to_string(id.value) +
                         " was already consumed");
  }
  rec.status = PairStatus::kConsumed;
  --available_;
  return rec;
}

int Network::measure_half(PairId id, const NodeId& node,
                          const qsim::SingleQubitBasis& basis,
                          qsim::RandomSource& rng) {
  EntangledPairRecord& rec = mutable_pair(id);
  if (rec.status == PairStatus::kConsumed) {
    throw LifecycleError("pair " + std::to_string(id.value) + " is consumed");
  }
  return rec.joint.measure_in_basis(rec.half_of(node), basis, rng);
}

std::vector<PairId> Network::unchecked_pairs(const NodeId& a,
                                             const NodeId& b) const {
  std::vector<PairId> out;
  for (const auto& rec : pairs_) {
    if (rec.status == PairStatus::kUnchecked && rec.shared_by(a, b)) {
      out.push_back(rec.id);
    }
  }
  return out;
}

std::vector<PairId> Network::unchecked_pairs_at(const NodeId& node) const {
  std::vector<PairId> out;
  for (const auto& rec : pairs_) {
    if (rec.status == PairStatus::kUnchecked &&
        (rec.owner_a == node || rec.owner_b == node)) {
      out.push_back(rec.id);
    }
  }
  return out;
}

std::uint64_t Network::bits_sent(const NodeId& node) const {
  const auto it = bits_sent_.find(node);
  return it == bits_sent_.end() ? 0 : it->second;
}

////////////////////////////////////////////////////////////
// Workspace

void Workspace::append(const PureState& s) {
  state_ = state_ ? qsim::product(*state_, s) : s;
}

int Workspace::prepare(const NodeId& owner, const PureState& single_qubit) {
  if (single_qubit.num_qubits() != 1) {
    throw std::invalid_argument("prepare expects a single-qubit state");
  }
  append(single_qubit);
  owners_.push_back(owner);
  ++ledger_->preparations;
  return size() - 1;
}

std::pair<int, int> Workspace::load_pair(const EntangledPairRecord& record) {
  if (record.status != PairStatus::kConsumed) {
    throw LifecycleError("only consumed pairs can be loaded into a workspace");
  }
  append(record.joint);
  owners_.push_back(record.owner_a);
  owners_.push_back(record.owner_b);
  ++ledger_->pairs_consumed;
  return {size() - 2, size() - 1};
}

void Workspace::require_owner(const NodeId& actor, int q) const {
  if (q < 0 || q >= size()) {
    throw std::out_of_range("workspace qubit " + std::to_string(q) +
                            " out of range");
  }
  if (owners_[q] != actor) {
    throw LifecycleError(actor.name() + " cannot touch qubit " +
                         std::to_string(q) + " held by " + owners_[q].name());
  }
}

void Workspace::apply(const NodeId& actor, qsim::GateKind gate, int q) {
  require_owner(actor, q);
  state_->apply(gate, q);
  ledger_->count_gate(gate);
}

void Workspace::apply_cnot(const NodeId& actor, int control, int target) {
  require_owner(actor, control);
  require_owner(actor, target);
  state_->apply_cnot(control, target);
  ++ledger_->gates_cnot;
}

int Workspace::measure(const NodeId& actor, int q, qsim::RandomSource& rng) {
  require_owner(actor, q);
  ++ledger_->measurements;
  return state_->measure(q, rng);
}

}  // namespace entverify::netmem
