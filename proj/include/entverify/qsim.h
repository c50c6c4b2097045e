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

#ifndef ENTVERIFY_QSIM_H
#define ENTVERIFY_QSIM_H

// Exact pure-state simulation of small qubit registers.
//
// Qubit ordering is big-endian throughout the library: in an n-qubit register
// qubit 0 is the leftmost character of the basis label, so the amplitude of
// |q0 q1 ... q(n-1)> lives at index q0*2^(n-1) + ... + q(n-1). For two qubits
// the amplitude order is (|00>, |01>, |10>, |11>).

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entverify::qsim {

using Amplitude = std::complex<double>;

/// Largest register the simulator accepts. Protocol rounds need at most 5.
inline constexpr int kMaxQubits = 12;

/// Tolerance for norm and orthogonality checks.
inline constexpr double kTolerance = 1e-9;

/// Measurement branches below this probability are never selected.
inline constexpr double kImpossibleBranch = 1e-12;

/// Index (i, j) of the Bell state |beta_ij>.
///
///   beta_00 = (|00> + |11>)/sqrt2     beta_01 = (|10> + |01>)/sqrt2
///   beta_10 = (|10> - |01>)/sqrt2     beta_11 = (|00> - |11>)/sqrt2
struct BellVariant {
  std::uint8_t i = 0;
  std::uint8_t j = 0;

  constexpr BellVariant() = default;
  BellVariant(int i_bit, int j_bit);

  /// Pauli frames compose by XOR of the index bits.
  friend BellVariant operator^(BellVariant a, BellVariant b) {
    return BellVariant(a.i ^ b.i, a.j ^ b.j);
  }
  friend bool operator==(BellVariant, BellVariant) = default;

  /// "00", "01", "10" or "11".
  std::string label() const;
  static BellVariant parse(std::string_view label);
  static std::array<BellVariant, 4> all();
};

enum class GateKind { H, X, Z };

/// Orthonormal single-qubit basis {|u0>, |u1>} with |u0> = a|0> + b|1> and
/// |u1> = -conj(b)|0> + conj(a)|1>.
class SingleQubitBasis {
 public:
  /// Throws std::invalid_argument unless |a|^2 + |b|^2 = 1.
  SingleQubitBasis(Amplitude a, Amplitude b);

  static SingleQubitBasis computational();
  static SingleQubitBasis diagonal();
  /// a = cos(theta/2), b = e^{i phi} sin(theta/2).
  static SingleQubitBasis from_angles(double theta, double phi);

  Amplitude a() const { return a_; }
  Amplitude b() const { return b_; }
  /// Amplitudes (on |0>, |1>) of basis vector `outcome`.
  std::array<Amplitude, 2> vector(int outcome) const;

 private:
  Amplitude a_;
  Amplitude b_;
};

/// Deterministic random stream. Identical (seed, stream, draw index) yields an
/// identical draw. Satisfies UniformRandomBitGenerator.
class RandomSource {
 public:
  using result_type = std::uint64_t;

  explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t draws() const { return draws_; }

  result_type operator()();
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  /// Uniform on [0, 1), 53 bits.
  double uniform();
  int bit();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t draws_ = 0;
  std::mt19937_64 engine_;
};

class PureState {
 public:
  /// Throws std::length_error for a bad size, std::invalid_argument for a
  /// non-unit or non-finite vector.
  PureState(int num_qubits, std::vector<Amplitude> amps);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude amplitude(std::size_t index) const { return amps_.at(index); }
  double norm_squared() const;

  /// Probability that a computational measurement of `target` gives 1.
  double probability_of_one(int target) const;

  void apply(GateKind gate, int target);
  void apply_cnot(int control, int target);
  /// Applies the 2x2 unitary [[m00, m01], [m10, m11]] to `target`.
  void apply_matrix(const std::array<Amplitude, 4>& m, int target);

  /// Collapses `target` in the computational basis and returns the bit.
  int measure(int target, RandomSource& rng);
  /// Collapses `target` onto |u0> (returns 0) or |u1> (returns 1).
  int measure_in_basis(int target, const SingleQubitBasis& basis,
                       RandomSource& rng);

 private:
  std::size_t mask(int target) const;
  void check_index(int target) const;
  void project(int target, int outcome, double probability);

  int num_qubits_;
  std::vector<Amplitude> amps_;
};

PureState zero_state(int n);
/// Single-qubit a|0> + b|1>.
PureState qubit_state(Amplitude a, Amplitude b);
PureState basis_state(int num_qubits, std::size_t index);
PureState bell_state(BellVariant v);
PureState product(const PureState& a, const PureState& b);

PureState apply_gate(PureState s, GateKind gate, int target);
PureState apply_cnot(PureState s, int control, int target);

struct Measurement {
  int bit;
  PureState state;
};

Measurement measure_computational(PureState s, int target, RandomSource& rng);
Measurement measure_in_basis(PureState s, int target,
                             const SingleQubitBasis& basis, RandomSource& rng);

/// Exact outcome probabilities of measuring `target` in `basis`.
std::array<double, 2> basis_probabilities(const PureState& s, int target,
                                          const SingleQubitBasis& basis);

struct BellMeasurement {
  BellVariant variant;
  /// Raw bits of the CNOT(qa->qb), H(qa) circuit: qa then qb.
  int bit_a;
  int bit_b;
  PureState state;
};

/// Bell-basis measurement implemented as CNOT(qa->qb), H(qa) and two
/// computational measurements. Bits (p, q) identify beta_{p, p^q}: the circuit
/// sends beta_00 -> 00, beta_01 -> 01, beta_10 -> 11, beta_11 -> 10.
BellMeasurement bell_measure(PureState s, int qa, int qb, RandomSource& rng);
BellVariant bell_variant_from_circuit_bits(int bit_a, int bit_b);

/// |<a|b>|^2. Throws std::invalid_argument on a size mismatch.
double fidelity(const PureState& a, const PureState& b);

/// Factors `s` as (kept qubits) (x) (rest) and returns the kept factor, with
/// kept qubits in the order given. Throws std::domain_error if the kept
/// qubits are entangled with the rest.
PureState extract(const PureState& s, std::span<const int> keep);

/// Schmidt coefficients (descending) of a two-qubit state.
std::array<double, 2> schmidt_coefficients(const PureState& two_qubits);

/// Writes one `index,re,im` line per amplitude.
void write_amplitudes(std::ostream& out, const PureState& s);

}  // namespace entverify::qsim

#endif  // ENTVERIFY_QSIM_H
