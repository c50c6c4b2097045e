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

#include "entverify/qsim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace entverify::qsim {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

int checked_bit(int b) {
  if (b != 0 && b != 1) {
    throw std::invalid_argument("bit must be 0 or 1, got " + std::to_string(b));
  }
  return b;
}

}  // namespace

////////////////////////////////////////////////////////////
// BellVariant

BellVariant::BellVariant(int i_bit, int j_bit)
    : i(static_cast<std::uint8_t>(checked_bit(i_bit))),
      j(static_cast<std::uint8_t>(checked_bit(j_bit))) {}

std::string BellVariant::label() const {
  return {static_cast<char>('0' + i), static_cast<char>('0' + j)};
}

BellVariant BellVariant::parse(std::string_view label) {
  if (label.size() != 2 || (label[0] != '0' && label[0] != '1') ||
      (label[1] != '0' && label[1] != '1')) {
    throw std::invalid_argument("Bell variant must be one of 00, 01, 10, 11: '" +
                                std::string(label) + "'");
  }
  return BellVariant(label[0] - '0', label[1] - '0');
}

std::array<BellVariant, 4> BellVariant::all() {
  return {BellVariant(0, 0), BellVariant(0, 1), BellVariant(1, 0),
          BellVariant(1, 1)};
}

////////////////////////////////////////////////////////////
// SingleQubitBasis

SingleQubitBasis::SingleQubitBasis(Amplitude a, Amplitude b) : a_(a), b_(b) {
  const double n = std::norm(a) + std::norm(b);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kTolerance) {
    throw std::invalid_argument("basis vector is not normalized (|a|^2+|b|^2=" +
                                std::to_string(n) + ")");
  }
}

SingleQubitBasis SingleQubitBasis::computational() { return {1.0, 0.0}; }

SingleQubitBasis SingleQubitBasis::diagonal() { return {kInvSqrt2, kInvSqrt2}; }

SingleQubitBasis SingleQubitBasis::from_angles(double theta, double phi) {
  return {std::cos(theta / 2), std::polar(1.0, phi) * std::sin(theta / 2)};
}

std::array<Amplitude, 2> SingleQubitBasis::vector(int outcome) const {
  if (checked_bit(outcome) == 0) return {a_, b_};
  return {-std::conj(b_), std::conj(a_)};
}

////////////////////////////////////////////////////////////
// RandomSource

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

RandomSource::result_type RandomSource::operator()() {
  ++draws_;
  return engine_();
}

double RandomSource::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

int RandomSource::bit() { return static_cast<int>((*this)() >> 63); }

////////////////////////////////////////////////////////////
// PureState

PureState::PureState(int num_qubits, std::vector<Amplitude> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::length_error("register size " + std::to_string(num_qubits) +
                            " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  if (amps_.size() != (std::size_t{1} << num_qubits)) {
    throw std::length_error("amplitude vector length " +
                            std::to_string(amps_.size()) + " != 2^" +
                            std::to_string(num_qubits));
  }
  const double n = norm_squared();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kTolerance) {
    throw std::invalid_argument("state is not normalized (norm^2=" +
                                std::to_string(n) + ")");
  }
}

double PureState::norm_squared() const {
  double n = 0;
  for (const auto& a : amps_) n += std::norm(a);
  return n;
}

void PureState::check_index(int target) const {
  if (target < 0 || target >= num_qubits_) {
    throw std::out_of_range("qubit " + std::to_string(target) +
                            " out of range for a " +
                            std::to_string(num_qubits_) + "-qubit register");
  }
}

std::size_t PureState::mask(int target) const {
  check_index(target);
  return std::size_t{1} << (num_qubits_ - 1 - target);
}

double PureState::probability_of_one(int target) const {
  const std::size_t m = mask(target);
  double p = 0;
  for (std::size_t x = 0; x < amps_.size(); ++x) {
    if (x & m) p += std::norm(amps_[x]);
  }
  return p;
}

void PureState::apply_matrix(const std::array<Amplitude, 4>& u, int target) {
  const std::size_t m = mask(target);
  for (std::size_t x = 0; x < amps_.size(); ++x) {
    if (x & m) continue;
    const Amplitude a0 = amps_[x];
    const Amplitude a1 = amps_[x | m];
    amps_[x] = u[0] * a0 + u[1] * a1;
    amps_[x | m] = u[2] * a0 + u[3] * a1;
  }
}

void PureState::apply(GateKind gate, int target) {
  const std::size_t m = mask(target);
  switch (gate) {
    case GateKind::H:
      for (std::size_t x = 0; x < amps_.size(); ++x) {
        if (x & m) continue;
        const Amplitude a0 = amps_[x];
        const Amplitude a1 = amps_[x | m];
        amps_[x] = (a0 + a1) * kInvSqrt2;
        amps_[x | m] = (a0 - a1) * kInvSqrt2;
      }
      break;
    case GateKind::X:
      for (std::size_t x = 0; x < amps_.size(); ++x) {
        if (!(x & m)) std::swap(amps_[x], amps_[x | m]);
      }
      break;
    case GateKind::Z:
      for (std::size_t x = 0; x < amps_.size(); ++x) {
        if (x & m) amps_[x] = -amps_[x];
      }
      break;
  }
}

void PureState::apply_cnot(int control, int target) {
  const std::size_t cm = mask(control);
  const std::size_t tm = mask(target);
  if (control == target) {
    throw std::invalid_argument("CNOT control and target must differ");
  }
  for (std::size_t x = 0; x < amps_.size(); ++x) {
    if ((x & cm) && !(x & tm)) std::swap(amps_[x], amps_[x | tm]);
  }
}

void PureState::project(int target, int outcome, double probability) {
  const std::size_t m = mask(target);
  const double scale = 1.0 / std::sqrt(probability);
  for (std::size_t x = 0; x < amps_.size(); ++x) {
    const bool one = (x & m) != 0;
    if (one == (outcome == 1)) {
      amps_[x] *= scale;
    } else {
      amps_[x] = 0;
    }
  }
}

int PureState::measure(int target, RandomSource& rng) {
  const double p1 = std::clamp(probability_of_one(target), 0.0, 1.0);
  const double p0 = 1.0 - p1;
  const double u = rng.uniform();
  int outcome;
  if (p1 < kImpossibleBranch) {
    outcome = 0;
  } else if (p0 < kImpossibleBranch) {
    outcome = 1;
  } else {
    outcome = u < p0 ? 0 : 1;
  }
  project(target, outcome, outcome == 0 ? p0 : p1);
  return outcome;
}

int PureState::measure_in_basis(int target, const SingleQubitBasis& basis,
                                RandomSource& rng) {
  // V has columns |u0>, |u1>; V^dagger maps the basis onto |0>, |1>.
  const Amplitude a = basis.a();
  const Amplitude b = basis.b();
  const std::array<Amplitude, 4> v = {a, -std::conj(b), b, std::conj(a)};
  const std::array<Amplitude, 4> v_dag = {std::conj(a), std::conj(b), -b, a};
  apply_matrix(v_dag, target);
  const int outcome = measure(target, rng);
  apply_matrix(v, target);
  return outcome;
}

////////////////////////////////////////////////////////////
// Free functions

PureState basis_state(int num_qubits, std::size_t index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::length_error("register size " + std::to_string(num_qubits) +
                            " outside [1, " + std::to_string(kMaxQubits) + "]");
  }
  std::vector<Amplitude> amps(std::size_t{1} << num_qubits);
  if (index >= amps.size()) throw std::out_of_range("basis index out of range");
  amps[index] = 1.0;
  return PureState(num_qubits, std::move(amps));
}

PureState zero_state(int n) { return basis_state(n, 0); }

PureState qubit_state(Amplitude a, Amplitude b) { return PureState(1, {a, b}); }

PureState bell_state(BellVariant v) {
  const double s = kInvSqrt2;
  if (v == BellVariant(0, 0)) return PureState(2, {s, 0, 0, s});
  if (v == BellVariant(0, 1)) return PureState(2, {0, s, s, 0});
  if (v == BellVariant(1, 0)) return PureState(2, {0, -s, s, 0});
  return PureState(2, {s, 0, 0, -s});
}

PureState product(const PureState& a, const PureState& b) {
  const int n = a.num_qubits() + b.num_qubits();
  if (n > kMaxQubits) {
    throw std::length_error("product register of " + std::to_string(n) +
                            " qubits exceeds the cap of " +
                            std::to_string(kMaxQubits));
  }
  std::vector<Amplitude> amps;
  amps.reserve(a.dimension() * b.dimension());
  for (const auto& x : a.amplitudes()) {
    for (const auto& y : b.amplitudes()) amps.push_back(x * y);
  }
  return PureState(n, std::move(amps));
}

PureState apply_gate(PureState s, GateKind gate, int target) {
  s.apply(gate, target);
  return s;
}

PureState apply_cnot(PureState s, int control, int target) {
  s.apply_cnot(control, target);
  return s;
}

Measurement measure_computational(PureState s, int target, RandomSource& rng) {
  const int bit = s.measure(target, rng);
  return {bit, std::move(s)};
}

Measurement measure_in_basis(PureState s, int target,
                             const SingleQubitBasis& basis, RandomSource& rng) {
  const int bit = s.measure_in_basis(target, basis, rng);
  return {bit, std::move(s)};
}

std::array<double, 2> basis_probabilities(const PureState& s, int target,
                                          const SingleQubitBasis& basis) {
  PureState rotated = s;
  const Amplitude a = basis.a();
  const Amplitude b = basis.b();
  rotated.apply_matrix({std::conj(a), std::conj(b), -b, a}, target);
  const double p1 = rotated.probability_of_one(target);
  return {1.0 - p1, p1};
}

BellVariant bell_variant_from_circuit_bits(int bit_a, int bit_b) {
  return BellVariant(bit_a, bit_a ^ bit_b);
}

BellMeasurement bell_measure(PureState s, int qa, int qb, RandomSource& rng) {
  s.apply_cnot(qa, qb);
  s.apply(GateKind::H, qa);
  const int p = s.measure(qa, rng);
  const int q = s.measure(qb, rng);
  return {bell_variant_from_circuit_bits(p, q), p, q, std::move(s)};
}

double fidelity(const PureState& a, const PureState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("fidelity of states with different sizes");
  }
  Amplitude overlap = 0;
  for (std::size_t x = 0; x < a.dimension(); ++x) {
    overlap += std::conj(a.amplitude(x)) * b.amplitude(x);
  }
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

PureState extract(const PureState& s, std::span<const int> keep) {
  const int n = s.num_qubits();
  const int k = static_cast<int>(keep.size());
  std::vector<bool> kept(n, false);
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::out_of_range("extract: qubit out of range");
    if (kept[q]) throw std::invalid_argument("extract: repeated qubit");
    kept[q] = true;
  }
  if (k == 0) throw std::invalid_argument("extract: nothing to keep");
  if (k == n) {
    std::vector<Amplitude> amps(s.dimension());
    for (std::size_t x = 0; x < s.dimension(); ++x) {
      std::size_t y = 0;
      for (int pos = 0; pos < k; ++pos) {
        const int bit = (x >> (n - 1 - keep[pos])) & 1;
        y |= static_cast<std::size_t>(bit) << (k - 1 - pos);
      }
      amps[y] = s.amplitude(x);
    }
    return PureState(k, std::move(amps));
  }
  std::vector<int> rest;
  for (int q = 0; q < n; ++q) {
    if (!kept[q]) rest.push_back(q);
  }
  const std::size_t rows = std::size_t{1} << k;
  const std::size_t cols = std::size_t{1} << rest.size();

  // Reshape to M[kept index][rest index].
  std::vector<Amplitude> m(rows * cols);
  for (std::size_t x = 0; x < s.dimension(); ++x) {
    std::size_t r = 0;
    for (int pos = 0; pos < k; ++pos) {
      r = (r << 1) | ((x >> (n - 1 - keep[pos])) & 1);
    }
    std::size_t c = 0;
    for (int q : rest) c = (c << 1) | ((x >> (n - 1 - q)) & 1);
    m[r * cols + c] = s.amplitude(x);
  }

  // Rank-one factorization through the heaviest column.
  std::size_t best_col = 0;
  double best = -1;
  for (std::size_t c = 0; c < cols; ++c) {
    double w = 0;
    for (std::size_t r = 0; r < rows; ++r) w += std::norm(m[r * cols + c]);
    if (w > best) {
      best = w;
      best_col = c;
    }
  }
  std::vector<Amplitude> v(rows);
  const double scale = 1.0 / std::sqrt(best);
  for (std::size_t r = 0; r < rows; ++r) v[r] = m[r * cols + best_col] * scale;

  for (std::size_t c = 0; c < cols; ++c) {
    Amplitude w = 0;
    for (std::size_t r = 0; r < rows; ++r) w += std::conj(v[r]) * m[r * cols + c];
    for (std::size_t r = 0; r < rows; ++r) {
      if (std::abs(m[r * cols + c] - v[r] * w) > 1e-7) {
        throw std::domain_error("extract: kept qubits are entangled with the rest");
      }
    }
  }
  return PureState(k, std::move(v));
}

std::array<double, 2> schmidt_coefficients(const PureState& two_qubits) {
  if (two_qubits.num_qubits() != 2) {
    throw std::invalid_argument("Schmidt coefficients need a two-qubit state");
  }
  const auto a = two_qubits.amplitudes();
  // Singular values of [[a00, a01], [a10, a11]] for a unit Frobenius norm.
  const double det = std::abs(a[0] * a[3] - a[1] * a[2]);
  const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * det * det));
  const double hi = std::sqrt(std::max(0.0, (1.0 + disc) / 2));
  const double lo = std::sqrt(std::max(0.0, (1.0 - disc) / 2));
  return {hi, lo};
}

void write_amplitudes(std::ostream& out, const PureState& s) {
  const auto flags = out.flags();
  const auto precision = out.precision();
  out.precision(17);
  for (std::size_t x = 0; x < s.dimension(); ++x) {
    out << x << ',' << s.amplitude(x).real() << ',' << s.amplitude(x).imag()
        << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace entverify::qsim
