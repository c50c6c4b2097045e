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

#include "entverify/verify.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "entverify/teleport.h"

namespace entverify::verify {

using qsim::GateKind;

namespace {

enum class Role { kVerifier, kOther };

void send(netmem::Network& net, RoundResult& round, const NodeId& from,
          const NodeId& to, Role role, std::vector<std::uint8_t> payload) {
  netmem::ClassicalMessage msg{from, to, std::move(payload)};
  if (role == Role::kVerifier) {
    round.ledger.classical_bits_verifier += msg.bit_count();
  } else {
    round.ledger.classical_bits_other += msg.bit_count();
  }
  round.transcript.messages.push_back(msg);
  net.send_classical(std::move(msg));
}

std::vector<std::uint8_t> concat(std::vector<std::uint8_t> a,
                                 const std::vector<std::uint8_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// The Other Party's reply after the attacker policy has had its say.
std::vector<std::uint8_t> reply_bits(const adversary::AttackerPolicy* policy,
                                     std::vector<std::uint8_t> honest,
                                     qsim::RandomSource& rng) {
  if (policy == nullptr) return honest;
  return adversary::attacker_classical_reply(*policy, honest, rng);
}

netmem::EntangledPairRecord take_shared(netmem::Network& net, PairId id,
                                        const NodeId& verifier,
                                        const NodeId& other) {
  if (!net.pair(id).shared_by(verifier, other)) {
    throw netmem::LifecycleError("pair " + std::to_string(id.value) +
                                 " is not shared by " + verifier.name() +
                                 " and " + other.name());
  }
  return net.consume_pair(id);
}

void require_normalized(Amplitude a, Amplitude b, const char* what) {
  const double n = std::norm(a) + std::norm(b);
  if (!std::isfinite(n) || std::abs(n - 1.0) > qsim::kTolerance) {
    throw std::invalid_argument(std::string(what) + " is not normalized");
  }
}

}  // namespace

std::string to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kNA2010: return "NA2010";
    case ProtocolKind::kAC1: return "AC1";
    case ProtocolKind::kAC2: return "AC2";
  }
  return "?";
}

ProtocolKind parse_protocol(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "na2010") return ProtocolKind::kNA2010;
  if (lower == "ac1") return ProtocolKind::kAC1;
  if (lower == "ac2") return ProtocolKind::kAC2;
  throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

int pairs_per_round(ProtocolKind kind) {
  return kind == ProtocolKind::kAC2 ? 2 : 1;
}

int decide_na2010(int x, int y, BellVariant assumed, int a, int b) {
  const bool same_index = assumed.i == assumed.j;
  if (x == 0 && y == 0) {
    return same_index ? (a != b) : (a == b);
  }
  if (x == 1 && y == 1) {
    return assumed.i == 0 ? (a != b) : (a == b);
  }
  return 0;
}

bool decide_ac2(BellVariant assumed, int v1, int v2) {
  return !(v1 == assumed.i && v2 == assumed.j);
}

RoundResult na2010_round(netmem::Network& net, const NodeId& verifier,
                         const NodeId& other, PairId pair,
                         qsim::RandomSource& rng,
                         const adversary::AttackerPolicy* other_policy) {
  RoundResult round;
  RoundTranscript& t = round.transcript;
  t.protocol = ProtocolKind::kNA2010;
  t.pair_ids = {pair};

  const netmem::EntangledPairRecord rec = take_shared(net, pair, verifier, other);
  netmem::Workspace ws(round.ledger);
  const auto [q0, q1] = ws.load_pair(rec);
  const int qv = rec.owner_a == verifier ? q0 : q1;
  const int qo = rec.owner_a == verifier ? q1 : q0;

  const int x = rng.bit();
  ++round.ledger.rng_draws;
  if (x) ws.apply(verifier, GateKind::H, qv);
  const int a = ws.measure(verifier, qv, rng);
  send(net, round, verifier, other, Role::kVerifier, pair.to_bits());

  const int y_true = rng.bit();
  ++round.ledger.rng_draws;
  if (y_true) ws.apply(other, GateKind::H, qo);
  const int b_true = ws.measure(other, qo, rng);
  const auto reply = reply_bits(
      other_policy,
      {static_cast<std::uint8_t>(b_true), static_cast<std::uint8_t>(y_true)},
      rng);
  send(net, round, other, verifier, Role::kOther, reply);

  const int b = reply[0];
  const int y = reply[1];
  const int v = decide_na2010(x, y, rec.assumed, a, b);
  t.x = x;
  t.y = y;
  t.a = a;
  t.b = b;
  t.v = v;
  round.detected = v == 1;
  return round;
}

RoundResult ac1_round(netmem::Network& net, const NodeId& verifier,
                      const NodeId& other, PairId pair, qsim::RandomSource& rng,
                      const adversary::AttackerPolicy* other_policy) {
  RoundResult round;
  RoundTranscript& t = round.transcript;
  t.protocol = ProtocolKind::kAC1;
  t.pair_ids = {pair};

  const netmem::EntangledPairRecord rec = take_shared(net, pair, verifier, other);
  netmem::Workspace ws(round.ledger);

  const int s = rng.bit();
  ++round.ledger.rng_draws;
  send(net, round, verifier, other, Role::kVerifier,
       concat(pair.to_bits(), {static_cast<std::uint8_t>(s)}));

  const auto [q0, q1] = ws.load_pair(rec);
  const int qv = rec.owner_a == verifier ? q0 : q1;
  const int qo = rec.owner_a == verifier ? q1 : q0;
  const double r = 1.0 / std::numbers::sqrt2;
  const int psi = ws.prepare(other, s == 0 ? qsim::qubit_state(1, 0)
                                           : qsim::qubit_state(r, r));
  const teleport::TeleportBits sent =
      teleport::teleport_send(ws, other, psi, qo, rng);
  const auto reply = reply_bits(
      other_policy,
      {static_cast<std::uint8_t>(sent.b1), static_cast<std::uint8_t>(sent.b2)},
      rng);
  send(net, round, other, verifier, Role::kOther, reply);

  const int b1 = reply[0];
  const int b2 = reply[1];
  teleport::apply_correction(ws, verifier, qv,
                             teleport::correction_operator(rec.assumed, b1, b2));
  if (s) ws.apply(verifier, GateKind::H, qv);
  const int v = ws.measure(verifier, qv, rng);

  t.s = s;
  t.b1 = b1;
  t.b2 = b2;
  t.v = v;
  round.detected = v == 1;
  return round;
}

RoundResult ac2_round(netmem::Network& net, const NodeId& verifier,
                      const NodeId& other, PairId pair_checked,
                      PairId pair_channel, qsim::RandomSource& rng,
                      const adversary::AttackerPolicy* other_policy) {
  if (pair_checked == pair_channel) {
    throw std::invalid_argument("AC2 needs two distinct pairs");
  }
  RoundResult round;
  RoundTranscript& t = round.transcript;
  t.protocol = ProtocolKind::kAC2;
  t.pair_ids = {pair_checked, pair_channel};

  // Validate both before consuming either.
  for (const PairId id : {pair_checked, pair_channel}) {
    const auto& rec = net.pair(id);
    if (!rec.shared_by(verifier, other)) {
      throw netmem::LifecycleError("pair " + std::to_string(id.value) +
                                   " is not shared by " + verifier.name() +
                                   " and " + other.name());
    }
    if (rec.status != netmem::PairStatus::kUnchecked) {
      throw netmem::LifecycleError("pair " + std::to_string(id.value) +
                                   " was already consumed");
    }
  }
  const netmem::EntangledPairRecord checked = net.consume_pair(pair_checked);
  const netmem::EntangledPairRecord channel = net.consume_pair(pair_channel);
  send(net, round, verifier, other, Role::kVerifier,
       concat(pair_channel.to_bits(), pair_checked.to_bits()));

  netmem::Workspace ws(round.ledger);
  const auto [c0, c1] = ws.load_pair(checked);
  const auto [t0, t1] = ws.load_pair(channel);
  const int q1 = checked.owner_a == verifier ? c0 : c1;
  const int q2 = checked.owner_a == verifier ? c1 : c0;
  const int tv = channel.owner_a == verifier ? t0 : t1;
  const int to = channel.owner_a == verifier ? t1 : t0;

  const teleport::TeleportBits sent =
      teleport::teleport_send(ws, other, q2, to, rng);
  const auto reply = reply_bits(
      other_policy,
      {static_cast<std::uint8_t>(sent.b1), static_cast<std::uint8_t>(sent.b2)},
      rng);
  send(net, round, other, verifier, Role::kOther, reply);

  const int b1 = reply[0];
  const int b2 = reply[1];
  teleport::apply_correction(
      ws, verifier, tv, teleport::correction_operator(channel.assumed, b1, b2));

  ws.apply_cnot(verifier, q1, tv);
  ws.apply(verifier, GateKind::H, q1);
  ws.apply_cnot(verifier, q1, tv);
  const int v1 = ws.measure(verifier, q1, rng);
  const int v2 = ws.measure(verifier, tv, rng);

  t.b1 = b1;
  t.b2 = b2;
  t.v1 = v1;
  t.v2 = v2;
  round.detected = decide_ac2(checked.assumed, v1, v2);
  return round;
}

SessionResult run_verification(netmem::Network& net, ProtocolKind kind,
                               const NodeId& verifier, const NodeId& other,
                               int m, qsim::RandomSource& rng,
                               const adversary::AttackerPolicy* other_policy) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  const std::vector<PairId> pool = net.unchecked_pairs(verifier, other);
  const std::size_t needed =
      static_cast<std::size_t>(m) * static_cast<std::size_t>(pairs_per_round(kind));
  if (pool.size() < needed) {
    throw std::invalid_argument(
        to_string(kind) + " with m=" + std::to_string(m) + " needs " +
        std::to_string(needed) + " unchecked pairs, only " +
        std::to_string(pool.size()) + " available");
  }

  SessionResult session;
  session.m = m;
  session.rounds.reserve(m);
  for (int r = 0; r < m; ++r) {
    RoundResult round;
    switch (kind) {
      case ProtocolKind::kNA2010:
        round = na2010_round(net, verifier, other, pool[r], rng, other_policy);
        break;
      case ProtocolKind::kAC1:
        round = ac1_round(net, verifier, other, pool[r], rng, other_policy);
        break;
      case ProtocolKind::kAC2:
        round = ac2_round(net, verifier, other, pool[2 * r], pool[2 * r + 1],
                          rng, other_policy);
        break;
    }
    session.detected_any = session.detected_any || round.detected;
    session.pairs_sacrificed += round.ledger.pairs_consumed;
    session.ledger += round.ledger;
    session.rounds.push_back(std::move(round));
  }
  return session;
}

double closed_form_pm(ProtocolKind kind, int m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  double miss = 0;
  switch (kind) {
    case ProtocolKind::kNA2010: miss = 7.0 / 8.0; break;
    case ProtocolKind::kAC1: miss = 3.0 / 4.0; break;
    case ProtocolKind::kAC2: miss = 1.0 / 4.0; break;
  }
  return 1.0 - std::pow(miss, m);
}

double ac1_selector_detection_prob(int s, Amplitude alpha, Amplitude beta) {
  require_normalized(alpha, beta, "(alpha, beta)");
  if (s == 0) return std::norm(beta);
  if (s == 1) return std::norm(alpha - beta) / 2;
  throw std::invalid_argument("selector must be 0 or 1");
}

double ac1_detection_prob(Amplitude alpha, Amplitude beta) {
  return (ac1_selector_detection_prob(0, alpha, beta) +
          ac1_selector_detection_prob(1, alpha, beta)) /
         2;
}

qsim::PureState ac2_joint_state(Amplitude alpha, Amplitude beta,
                                Amplitude gamma, Amplitude delta) {
  require_normalized(alpha, beta, "(alpha, beta)");
  require_normalized(gamma, delta, "(gamma, delta)");
  const double r = 1.0 / std::numbers::sqrt2;
  return qsim::PureState(2, {r * (alpha * gamma + beta * delta),
                             r * (alpha * delta + beta * gamma),
                             r * (alpha * delta - beta * gamma),
                             r * (alpha * gamma - beta * delta)});
}

double ac2_detection_prob(Amplitude alpha, Amplitude beta, Amplitude gamma,
                          Amplitude delta) {
  require_normalized(alpha, beta, "(alpha, beta)");
  require_normalized(gamma, delta, "(gamma, delta)");
  return 1.0 - std::norm(alpha * gamma + beta * delta) / 2;
}

}  // namespace entverify::verify
