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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace entverify::adversary {

namespace {

double parse_double(std::string_view text, std::string_view whole) {
  std::istringstream in{std::string(text)};
  double value;
  char trailing;
  if (text.empty() || !(in >> value) || (in >> trailing) ||
      !std::isfinite(value)) {
    throw std::invalid_argument("malformed angle in attacker basis '" +
                                std::string(whole) + "'");
  }
  return value;
}

}  // namespace

AttackBasis AttackBasis::parse(std::string_view text) {
  if (text == "computational") return computational();
  if (text == "diagonal") return diagonal();
  if (text == "haar") return haar();
  constexpr std::string_view kAngle = "angle:";
  if (text.starts_with(kAngle)) {
    const std::string_view rest = text.substr(kAngle.size());
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) {
      throw std::invalid_argument("attacker basis '" + std::string(text) +
                                  "' must be angle:<theta>,<phi>");
    }
    const double theta = parse_double(rest.substr(0, comma), text);
    const double phi = parse_double(rest.substr(comma + 1), text);
    return of(qsim::SingleQubitBasis::from_angles(theta, phi));
  }
  throw std::invalid_argument("unknown attacker basis '" + std::string(text) +
                              "'");
}

std::string AttackBasis::label() const {
  switch (kind) {
    case Kind::kComputational: return "computational";
    case Kind::kDiagonal: return "diagonal";
    case Kind::kHaarPerPair: return "haar";
    case Kind::kFixed: break;
  }
  std::ostringstream out;
  out << "fixed(" << fixed.a() << "," << fixed.b() << ")";
  return out.str();
}

qsim::SingleQubitBasis haar_basis(qsim::RandomSource& rng) {
  const double cos_theta = 2.0 * rng.uniform() - 1.0;
  const double phi = 2.0 * std::numbers::pi * rng.uniform();
  return qsim::SingleQubitBasis::from_angles(std::acos(cos_theta), phi);
}

qsim::SingleQubitBasis basis_for_pair(const AttackBasis& basis,
                                      qsim::RandomSource& rng) {
  switch (basis.kind) {
    case AttackBasis::Kind::kComputational:
      return qsim::SingleQubitBasis::computational();
    case AttackBasis::Kind::kDiagonal:
      return qsim::SingleQubitBasis::diagonal();
    case AttackBasis::Kind::kHaarPerPair:
      return haar_basis(rng);
    case AttackBasis::Kind::kFixed:
      break;
  }
  return basis.fixed;
}

CompromiseEvent compromise_node(netmem::Network& net, const NodeId& node,
                                const AttackerPolicy& policy,
                                qsim::RandomSource& rng) {
  switch (policy.scenario) {
    case AttackScenario::kNodeCapture:
      break;
    case AttackScenario::kChannelInterception:
      throw UnsupportedAttack("channel interception attacks are not simulated");
    case AttackScenario::kAncillaEntangling:
      throw UnsupportedAttack("ancilla-entangling attacks are not simulated");
  }
  if (!net.has_node(node)) {
    throw std::invalid_argument("unknown node " + node.name());
  }
  CompromiseEvent event{node, policy, {}};
  for (const PairId id : net.unchecked_pairs_at(node)) {
    if (policy.target_pairs &&
        std::find(policy.target_pairs->begin(), policy.target_pairs->end(),
                  id) == policy.target_pairs->end()) {
      continue;
    }
    const qsim::SingleQubitBasis basis = basis_for_pair(policy.basis, rng);
    event.collapsed.emplace_back(id, net.measure_half(id, node, basis, rng));
  }
  return event;
}

std::vector<std::uint8_t> attacker_classical_reply(
    const AttackerPolicy& policy, std::span<const std::uint8_t> honest,
    qsim::RandomSource& rng) {
  std::vector<std::uint8_t> reply(honest.begin(), honest.end());
  if (policy.classical == ClassicalBehavior::kRandomBits) {
    for (auto& b : reply) b = static_cast<std::uint8_t>(rng.bit());
  }
  return reply;
}

}  // namespace entverify::adversary
