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

#ifndef ENTVERIFY_KEYS_H
#define ENTVERIFY_KEYS_H

// Raw-key sifting from surviving pairs and bit-error-rate estimation.
//
// The module stops at the QBER estimate. Information reconciliation and
// privacy amplification take `remaining_key_a` / `remaining_key_b` as input
// and are not part of this library.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "entverify/netmem.h"
#include "entverify/qsim.h"

namespace entverify::keys {

using netmem::NodeId;
using netmem::PairId;

using BitString = std::vector<std::uint8_t>;

struct RawKey {
  BitString bits;
  std::vector<PairId> sources;
};

struct QberEstimate {
  double epsilon = 0;
  std::vector<std::size_t> disclosed_positions;
  BitString remaining_key_a;
  BitString remaining_key_b;
};

/// Both nodes measure their halves in the rectilinear basis; `node_a`
/// complements its bit when the pair's assumed variant has i != j. All pairs
/// are consumed. Returns (key of node_a, key of node_b).
std::pair<RawKey, RawKey> sift_raw_key(netmem::Network& net,
                                       const NodeId& node_a,
                                       const NodeId& node_b,
                                       const std::vector<PairId>& pair_ids,
                                       qsim::RandomSource& rng);

/// Discloses ceil(sample_fraction * length) positions chosen uniformly without
/// replacement and strips them from both keys.
QberEstimate estimate_qber(const RawKey& a, const RawKey& b,
                           double sample_fraction, qsim::RandomSource& rng);

/// Packs bits MSB-first into lowercase hex; the last nibble is zero padded.
std::string to_hex(const BitString& bits);

}  // namespace entverify::keys

#endif  // ENTVERIFY_KEYS_H
