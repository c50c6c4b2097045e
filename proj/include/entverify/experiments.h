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

#ifndef ENTVERIFY_EXPERIMENTS_H
#define ENTVERIFY_EXPERIMENTS_H

// Monte Carlo detection estimates, f(p) histograms and protocol comparison
// tables, with CSV emission.
//
// Every trial (or block of histogram samples) draws from its own substream
// (seed, index), so results do not depend on the number of worker threads.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entverify/adversary.h"
#include "entverify/qsim.h"
#include "entverify/verify.h"

namespace entverify::experiments {

using qsim::Amplitude;
using verify::ProtocolKind;

inline constexpr std::uint64_t kDefaultDetectionTrials = 100'000;
inline constexpr std::uint64_t kDefaultHistogramSamples = 1'000'000;
inline constexpr int kDefaultBins = 100;

/// Means of f(p) reported for the unpublished sampling law.
inline constexpr double kReportedMeanAC1 = 0.41;
inline constexpr double kReportedMeanAC2 = 0.86;

enum class SamplingScheme {
  /// Uniform on the Bloch sphere.
  kHaar,
  /// alpha = cos(theta), beta = sin(theta), theta uniform on [0, 2pi).
  kRealAngleUniform,
  /// Re/Im of alpha and beta uniform on [-1, 1], then normalized.
  kComponentUniform,
};

std::string to_string(SamplingScheme scheme);
SamplingScheme parse_scheme(std::string_view name);

struct QubitAmplitudes {
  Amplitude alpha;
  Amplitude beta;
};

QubitAmplitudes sample_qubit(SamplingScheme scheme, qsim::RandomSource& rng);

struct WilsonInterval {
  double low;
  double high;
};

/// Wilson score interval; z = 1.96 gives 95% coverage.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = 1.959963984540054);

struct SessionSetup {
  /// Assumed (and distributed) variant of every pair.
  qsim::BellVariant variant;
  int id_bits = netmem::kDefaultIdBits;
  /// When false the Other Party is honest and the policy is ignored.
  bool attacker_present = true;
};

struct DetectionEstimate {
  ProtocolKind protocol = ProtocolKind::kNA2010;
  int m = 0;
  std::uint64_t pairs_sacrificed = 0;
  std::uint64_t trials = 0;
  std::uint64_t detections = 0;
  double p_hat = 0;
  double ci_low = 0;
  double ci_high = 0;
  /// Present for computational and diagonal attackers.
  std::optional<double> p_closed;
  std::uint64_t seed = 0;
};

/// Runs `trials` independent sessions between N1 (Verifier) and N2 (Other
/// Party): fresh network and pairs, N2 compromised under `policy`, then m
/// rounds. p_hat is the fraction of sessions with any detection.
DetectionEstimate mc_detection(ProtocolKind kind,
                               const adversary::AttackerPolicy& policy, int m,
                               std::uint64_t trials, std::uint64_t seed,
                               int jobs = 1, const SessionSetup& setup = {});

/// One session of mc_detection, exposed for tests. Returns detected_any.
bool run_detection_trial(ProtocolKind kind,
                         const adversary::AttackerPolicy& policy, int m,
                         std::uint64_t seed, std::uint64_t trial,
                         const SessionSetup& setup = {});

/// mc_detection for m = 1..max_m.
std::vector<DetectionEstimate> detection_curve(
    ProtocolKind kind, const adversary::AttackerPolicy& policy, int max_m,
    std::uint64_t trials, std::uint64_t seed, int jobs = 1);

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  double empirical_mean = 0;
  double empirical_min = 0;
  double empirical_max = 0;

  /// Index of the bin holding `value` (values of 1.0 land in the last bin).
  std::size_t bin_of(double value) const;
  std::size_t modal_bin() const;
};

/// Per-sample detection probability from the closed forms: one (alpha, beta)
/// for AC1, independent (alpha, beta) and (gamma, delta) for AC2. Bins are
/// uniform over [0, 1].
Histogram fp_histogram(ProtocolKind kind, std::uint64_t samples,
                       SamplingScheme scheme, int bins, std::uint64_t seed,
                       int jobs = 1);

/// Re-bins a histogram by summing groups of `factor` adjacent bins.
Histogram coarsen(const Histogram& h, int factor);

struct ComparisonRow {
  ProtocolKind protocol;
  int pairs_sacrificed;
  double p_closed;
};

/// NA2010 and AC1 at 1..max_pairs, AC2 at even pair counts (m = pairs / 2).
std::vector<ComparisonRow> comparison_table(int max_pairs);

struct MeanCheck {
  double mean;
  double reported_mean;
  std::string scheme_label;
};

/// Empirical f(p) mean next to the reported value. Makes no pass/fail claim.
MeanCheck empirical_mean_check(ProtocolKind kind, SamplingScheme scheme,
                               std::uint64_t samples, std::uint64_t seed,
                               int jobs = 1);

/// Fixed-point with `digits` decimals, independent of stream state.
std::string format_fixed(double value, int digits = 6);

void write_detection_csv(std::ostream& out,
                         const std::vector<DetectionEstimate>& rows);
void write_histogram_csv(std::ostream& out, const Histogram& h);
void write_comparison_csv(std::ostream& out,
                          const std::vector<ComparisonRow>& rows);

/// Calls fn(i) for i in [0, count) on `jobs` threads in contiguous blocks.
void parallel_for(std::uint64_t count, int jobs,
                  const std::function<void(std::uint64_t)>& fn);

}  // namespace entverify::experiments

#endif  // ENTVERIFY_EXPERIMENTS_H
