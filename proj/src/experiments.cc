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

#include "entverify/experiments.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "entverify/netmem.h"

namespace entverify::experiments {

namespace {

constexpr std::uint64_t kHistogramBlock = 4096;

const netmem::NodeId& verifier_node() {
  static const netmem::NodeId id("N1");
  return id;
}

const netmem::NodeId& other_node() {
  static const netmem::NodeId id("N2");
  return id;
}

struct BlockStats {
  std::vector<std::uint64_t> counts;
  double sum = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
};

double sample_detection_prob(ProtocolKind kind, SamplingScheme scheme,
                             qsim::RandomSource& rng) {
  const QubitAmplitudes first = sample_qubit(scheme, rng);
  if (kind == ProtocolKind::kAC1) {
    return verify::ac1_detection_prob(first.alpha, first.beta);
  }
  const QubitAmplitudes second = sample_qubit(scheme, rng);
  return verify::ac2_detection_prob(first.alpha, first.beta, second.alpha,
                                    second.beta);
}

}  // namespace

std::string to_string(SamplingScheme scheme) {
  switch (scheme) {
    case SamplingScheme::kHaar: return "haar";
    case SamplingScheme::kRealAngleUniform: return "real_angle_uniform";
    case SamplingScheme::kComponentUniform: return "component_uniform";
  }
  return "?";
}

SamplingScheme parse_scheme(std::string_view name) {
  if (name == "haar") return SamplingScheme::kHaar;
  if (name == "real_angle_uniform") return SamplingScheme::kRealAngleUniform;
  if (name == "component_uniform") return SamplingScheme::kComponentUniform;
  throw std::invalid_argument("unknown sampling scheme '" + std::string(name) +
                              "'");
}

QubitAmplitudes sample_qubit(SamplingScheme scheme, qsim::RandomSource& rng) {
  switch (scheme) {
    case SamplingScheme::kHaar: {
      const double cos_theta = 2.0 * rng.uniform() - 1.0;
      const double phi = 2.0 * std::numbers::pi * rng.uniform();
      const double c = std::sqrt((1.0 + cos_theta) / 2);
      const double s = std::sqrt(std::max(0.0, (1.0 - cos_theta) / 2));
      return {c, std::polar(s, phi)};
    }
    case SamplingScheme::kRealAngleUniform: {
      const double theta = 2.0 * std::numbers::pi * rng.uniform();
      return {std::cos(theta), std::sin(theta)};
    }
    case SamplingScheme::kComponentUniform: {
      for (;;) {
        const Amplitude a(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
        const Amplitude b(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
        const double n = std::sqrt(std::norm(a) + std::norm(b));
        if (n > 1e-6) return {a / n, b / n};
      }
    }
  }
  throw std::invalid_argument("unknown sampling scheme");
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z) {
  if (trials == 0 || successes > trials) {
    throw std::invalid_argument("Wilson interval needs 0 <= successes <= trials > 0");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double center = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half =
      z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

void parallel_for(std::uint64_t count, int jobs,
                  const std::function<void(std::uint64_t)>& fn) {
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  const std::uint64_t workers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), count);
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> threads;
  threads.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    threads.emplace_back([&fn, begin, end] {
      for (std::uint64_t i = begin; i < end; ++i) fn(i);
    });
  }
}

bool run_detection_trial(ProtocolKind kind,
                         const adversary::AttackerPolicy& policy, int m,
                         std::uint64_t seed, std::uint64_t trial,
                         const SessionSetup& setup) {
  qsim::RandomSource rng(seed, trial);
  netmem::Network net = netmem::Network::build(
      {verifier_node(), other_node()}, {{verifier_node(), other_node()}},
      setup.id_bits);
  const int pairs = m * verify::pairs_per_round(kind);
  for (int p = 0; p < pairs; ++p) {
    net.distribute_pair(verifier_node(), other_node(), setup.variant);
  }
  const adversary::AttackerPolicy* other_policy = nullptr;
  if (setup.attacker_present) {
    adversary::compromise_node(net, other_node(), policy, rng);
    other_policy = &policy;
  }
  return verify::run_verification(net, kind, verifier_node(), other_node(), m,
                                  rng, other_policy)
      .detected_any;
}

DetectionEstimate mc_detection(ProtocolKind kind,
                               const adversary::AttackerPolicy& policy, int m,
                               std::uint64_t trials, std::uint64_t seed,
                               int jobs, const SessionSetup& setup) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (trials < 100) throw std::invalid_argument("trials must be at least 100");

  std::vector<std::uint8_t> detected(trials, 0);
  parallel_for(trials, jobs, [&](std::uint64_t t) {
    detected[t] = run_detection_trial(kind, policy, m, seed, t, setup);
  });

  DetectionEstimate est;
  est.protocol = kind;
  est.m = m;
  est.pairs_sacrificed =
      static_cast<std::uint64_t>(m) * verify::pairs_per_round(kind);
  est.trials = trials;
  for (const auto d : detected) est.detections += d;
  est.p_hat = static_cast<double>(est.detections) / static_cast<double>(trials);
  const WilsonInterval ci = wilson_interval(est.detections, trials);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  const auto basis = policy.basis.kind;
  if (setup.attacker_present &&
      (basis == adversary::AttackBasis::Kind::kComputational ||
       basis == adversary::AttackBasis::Kind::kDiagonal)) {
    est.p_closed = verify::closed_form_pm(kind, m);
  }
  est.seed = seed;
  return est;
}

std::vector<DetectionEstimate> detection_curve(
    ProtocolKind kind, const adversary::AttackerPolicy& policy, int max_m,
    std::uint64_t trials, std::uint64_t seed, int jobs) {
  if (max_m < 1) throw std::invalid_argument("max_m must be at least 1");
  std::vector<DetectionEstimate> rows;
  for (int m = 1; m <= max_m; ++m) {
    rows.push_back(mc_detection(kind, policy, m, trials, seed, jobs));
  }
  return rows;
}

std::size_t Histogram::bin_of(double value) const {
  const auto it = std::upper_bound(bin_edges.begin(), bin_edges.end(), value);
  const auto idx = static_cast<std::size_t>(
      std::max<std::ptrdiff_t>(0, it - bin_edges.begin() - 1));
  return std::min(idx, counts.size() - 1);
}

std::size_t Histogram::modal_bin() const {
  return static_cast<std::size_t>(
      std::max_element(counts.begin(), counts.end()) - counts.begin());
}

Histogram fp_histogram(ProtocolKind kind, std::uint64_t samples,
                       SamplingScheme scheme, int bins, std::uint64_t seed,
                       int jobs) {
  if (kind == ProtocolKind::kNA2010) {
    throw std::invalid_argument("f(p) histograms exist for AC1 and AC2 only");
  }
  if (samples < 10'000) throw std::invalid_argument("samples must be >= 10^4");
  if (bins < 1) throw std::invalid_argument("bins must be positive");

  Histogram h;
  for (int b = 0; b <= bins; ++b) {
    h.bin_edges.push_back(static_cast<double>(b) / bins);
  }
  h.counts.assign(bins, 0);

  const std::uint64_t blocks = (samples + kHistogramBlock - 1) / kHistogramBlock;
  std::vector<BlockStats> stats(blocks);
  parallel_for(blocks, jobs, [&](std::uint64_t blk) {
    qsim::RandomSource rng(seed, blk);
    BlockStats& st = stats[blk];
    st.counts.assign(bins, 0);
    const std::uint64_t begin = blk * kHistogramBlock;
    const std::uint64_t end = std::min(samples, begin + kHistogramBlock);
    for (std::uint64_t i = begin; i < end; ++i) {
      const double p = sample_detection_prob(kind, scheme, rng);
      ++st.counts[h.bin_of(p)];
      st.sum += p;
      st.min = std::min(st.min, p);
      st.max = std::max(st.max, p);
    }
  });

  double sum = 0;
  h.empirical_min = std::numeric_limits<double>::infinity();
  h.empirical_max = -std::numeric_limits<double>::infinity();
  for (const auto& st : stats) {
    for (int b = 0; b < bins; ++b) h.counts[b] += st.counts[b];
    sum += st.sum;
    h.empirical_min = std::min(h.empirical_min, st.min);
    h.empirical_max = std::max(h.empirical_max, st.max);
  }
  h.total = samples;
  h.empirical_mean = sum / static_cast<double>(samples);
  return h;
}

Histogram coarsen(const Histogram& h, int factor) {
  if (factor < 1 || h.counts.size() % static_cast<std::size_t>(factor) != 0) {
    throw std::invalid_argument("coarsening factor must divide the bin count");
  }
  Histogram out = h;
  out.counts.clear();
  out.bin_edges.clear();
  for (std::size_t b = 0; b < h.counts.size(); b += factor) {
    std::uint64_t c = 0;
    for (int k = 0; k < factor; ++k) c += h.counts[b + k];
    out.counts.push_back(c);
    out.bin_edges.push_back(h.bin_edges[b]);
  }
  out.bin_edges.push_back(h.bin_edges.back());
  return out;
}

std::vector<ComparisonRow> comparison_table(int max_pairs) {
  if (max_pairs < 2) throw std::invalid_argument("max_pairs must be >= 2");
  std::vector<ComparisonRow> rows;
  for (const ProtocolKind kind : {ProtocolKind::kNA2010, ProtocolKind::kAC1}) {
    for (int pairs = 1; pairs <= max_pairs; ++pairs) {
      rows.push_back({kind, pairs, verify::closed_form_pm(kind, pairs)});
    }
  }
  for (int pairs = 2; pairs <= max_pairs; pairs += 2) {
    rows.push_back({ProtocolKind::kAC2, pairs,
                    verify::closed_form_pm(ProtocolKind::kAC2, pairs / 2)});
  }
  return rows;
}

MeanCheck empirical_mean_check(ProtocolKind kind, SamplingScheme scheme,
                               std::uint64_t samples, std::uint64_t seed,
                               int jobs) {
  if (samples < 100'000) throw std::invalid_argument("samples must be >= 10^5");
  const Histogram h =
      fp_histogram(kind, samples, scheme, kDefaultBins, seed, jobs);
  return {h.empirical_mean,
          kind == ProtocolKind::kAC1 ? kReportedMeanAC1 : kReportedMeanAC2,
          to_string(scheme)};
}

std::string format_fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

void write_detection_csv(std::ostream& out,
                         const std::vector<DetectionEstimate>& rows) {
  out << "protocol,m,pairs_sacrificed,trials,p_hat,ci_low,ci_high,p_closed,seed\n";
  for (const auto& r : rows) {
    out << verify::to_string(r.protocol) << ',' << r.m << ','
        << r.pairs_sacrificed << ',' << r.trials << ',' << format_fixed(r.p_hat)
        << ',' << format_fixed(r.ci_low) << ',' << format_fixed(r.ci_high)
        << ',' << (r.p_closed ? format_fixed(*r.p_closed) : "") << ','
        << r.seed << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_low,bin_high,count,frequency\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    const double freq =
        h.total ? static_cast<double>(h.counts[b]) / static_cast<double>(h.total)
                : 0.0;
    out << format_fixed(h.bin_edges[b]) << ',' << format_fixed(h.bin_edges[b + 1])
        << ',' << h.counts[b] << ',' << format_fixed(freq) << '\n';
  }
}

void write_comparison_csv(std::ostream& out,
                          const std::vector<ComparisonRow>& rows) {
  out << "protocol,pairs_sacrificed,p_closed\n";
  for (const auto& r : rows) {
    out << verify::to_string(r.protocol) << ',' << r.pairs_sacrificed << ','
        << format_fixed(r.p_closed) << '\n';
  }
}

}  // namespace entverify::experiments
