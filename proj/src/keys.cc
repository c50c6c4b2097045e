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

#include "entverify/keys.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace entverify::keys {

std::pair<RawKey, RawKey> sift_raw_key(netmem::Network& net,
                                       const NodeId& node_a,
                                       const NodeId& node_b,
                                       const std::vector<PairId>& pair_ids,
                                       qsim::RandomSource& rng) {
  for (const PairId id : pair_ids) {
    const auto& rec = net.pair(id);
    if (!rec.shared_by(node_a, node_b)) {
      throw netmem::LifecycleError("pair " + std::to_string(id.value) +
                                   " is not shared by " + node_a.name() +
                                   " and " + node_b.name());
    }
    if (rec.status != netmem::PairStatus::kUnchecked) {
      throw netmem::LifecycleError("pair " + std::to_string(id.value) +
                                   " was already consumed");
    }
  }
  RawKey key_a;
  RawKey key_b;
  for (const PairId id : pair_ids) {
    const netmem::EntangledPairRecord rec = net.consume_pair(id);
    netmem::ResourceLedger unused;
    netmem::Workspace ws(unused);
    const auto [q0, q1] = ws.load_pair(rec);
    const int qa = rec.owner_a == node_a ? q0 : q1;
    const int qb = rec.owner_a == node_a ? q1 : q0;
    int bit_a = ws.measure(node_a, qa, rng);
    const int bit_b = ws.measure(node_b, qb, rng);
    if (rec.assumed.i != rec.assumed.j) bit_a ^= 1;
    key_a.bits.push_back(static_cast<std::uint8_t>(bit_a));
    key_b.bits.push_back(static_cast<std::uint8_t>(bit_b));
    key_a.sources.push_back(id);
    key_b.sources.push_back(id);
  }
  return {std::move(key_a), std::move(key_b)};
}

QberEstimate estimate_qber(const RawKey& a, const RawKey& b,
                           double sample_fraction, qsim::RandomSource& rng) {
  if (a.bits.size() != b.bits.size()) {
    throw std::invalid_argument("raw keys differ in length");
  }
  if (!(sample_fraction > 0 && sample_fraction < 1)) {
    throw std::invalid_argument("sample fraction must lie in (0, 1)");
  }
  const std::size_t n = a.bits.size();
  const auto k = static_cast<std::size_t>(
      std::ceil(sample_fraction * static_cast<double>(n)));
  if (k == 0) throw std::invalid_argument("QBER sample is empty");

  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  QberEstimate est;
  std::sample(positions.begin(), positions.end(),
              std::back_inserter(est.disclosed_positions), k, rng);

  std::vector<bool> disclosed(n, false);
  std::size_t mismatches = 0;
  for (const std::size_t p : est.disclosed_positions) {
    disclosed[p] = true;
    mismatches += a.bits[p] != b.bits[p];
  }
  est.epsilon = static_cast<double>(mismatches) / static_cast<double>(k);
  for (std::size_t p = 0; p < n; ++p) {
    if (disclosed[p]) continue;
    est.remaining_key_a.push_back(a.bits[p]);
    est.remaining_key_b.push_back(b.bits[p]);
  }
  return est;
}

std::string to_hex(const BitString& bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int nibble = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nibble <<= 1;
      if (i + j < bits.size()) nibble |= bits[i + j] & 1;
    }
    out.push_back(kDigits[nibble]);
  }
  return out;
}

}  // namespace entverify::keys
