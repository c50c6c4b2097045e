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

#include "entverify/cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "entverify/adversary.h"
#include "entverify/experiments.h"
#include "entverify/keys.h"
#include "entverify/netmem.h"
#include "entverify/teleport.h"
#include "entverify/verify.h"

namespace entverify::cli {

namespace {

using experiments::format_fixed;

const char* const kBasisHelp =
    "Attacker measurement basis: computational, diagonal, haar (fresh "
    "Haar-random basis per pair), angle:<theta>,<phi> (radians; "
    "a=cos(theta/2), b=e^{i phi} sin(theta/2)), or none (honest Other Party)";

void add_seed_and_jobs(CLI::App* sub, CliConfig& c) {
  sub->add_option("--seed", c.seed,
                  std::string("Base seed (default ") +
                      std::to_string(kDefaultSeed) + ", env " + kSeedEnvVar +
                      ")");
  sub->add_option("--jobs", c.jobs, "Worker threads; output is identical for any value")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_output(CLI::App* sub, CliConfig& c) {
  sub->add_option("-o,--output", c.output, "Output path (default stdout)");
}

void add_attacker(CLI::App* sub, CliConfig& c) {
  sub->add_option("--attacker-basis", c.attacker_basis, kBasisHelp)
      ->capture_default_str();
  sub->add_option("--attacker-classical", c.attacker_classical,
                  "Compromised Other Party's replies: honest or random")
      ->capture_default_str()
      ->check(CLI::IsMember({"honest", "random"}));
}

CLI::Option* add_protocol(CLI::App* sub, CliConfig& c,
                          std::vector<std::string> allowed) {
  return sub->add_option("--protocol", c.protocol, "Verification protocol")
      ->required()
      ->check(CLI::IsMember(std::move(allowed), CLI::ignore_case));
}

adversary::AttackerPolicy make_policy(const CliConfig& c) {
  adversary::AttackerPolicy policy;
  if (c.attacker_basis != "none") {
    policy.basis = adversary::AttackBasis::parse(c.attacker_basis);
  }
  policy.classical = c.attacker_classical == "random"
                         ? adversary::ClassicalBehavior::kRandomBits
                         : adversary::ClassicalBehavior::kHonestProtocol;
  return policy;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void summarize_detection(std::ostream& err,
                         const experiments::DetectionEstimate& e) {
  err << verify::to_string(e.protocol) << " m=" << e.m
      << " pairs=" << e.pairs_sacrificed << " trials=" << e.trials
      << ": p_hat=" << format_fixed(e.p_hat) << " [" << format_fixed(e.ci_low)
      << ", " << format_fixed(e.ci_high) << "]";
  if (e.p_closed) err << " p_closed=" << format_fixed(*e.p_closed);
  err << '\n';
}

int run_simulate(const CliConfig& c, std::ostream& out, std::ostream& err) {
  experiments::SessionSetup setup;
  setup.variant = qsim::BellVariant::parse(c.variant);
  setup.id_bits = c.id_bits;
  setup.attacker_present = c.attacker_basis != "none";
  const auto est = experiments::mc_detection(
      verify::parse_protocol(c.protocol), make_policy(c), c.m, c.trials, c.seed,
      c.jobs, setup);
  experiments::write_detection_csv(out, {est});
  summarize_detection(err, est);
  return 0;
}

int run_curve(const CliConfig& c, std::ostream& out, std::ostream& err) {
  if (c.attacker_basis == "none") {
    throw std::invalid_argument("curve needs an attacker basis");
  }
  const auto rows = experiments::detection_curve(
      verify::parse_protocol(c.protocol), make_policy(c), c.max_m, c.trials,
      c.seed, c.jobs);
  experiments::write_detection_csv(out, rows);
  summarize_detection(err, rows.back());
  return 0;
}

int run_histogram(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const auto kind = verify::parse_protocol(c.protocol);
  const auto scheme = experiments::parse_scheme(c.scheme);
  const auto h =
      experiments::fp_histogram(kind, c.samples, scheme, c.bins, c.seed, c.jobs);
  experiments::write_histogram_csv(out, h);
  const double reported = kind == verify::ProtocolKind::kAC1
                              ? experiments::kReportedMeanAC1
                              : experiments::kReportedMeanAC2;
  err << verify::to_string(kind) << ' ' << c.scheme << " samples=" << h.total
      << ": measured_mean=" << format_fixed(h.empirical_mean)
      << " reported_mean=" << format_fixed(reported, 2)
      << " min=" << format_fixed(h.empirical_min)
      << " max=" << format_fixed(h.empirical_max) << '\n';
  return 0;
}

int run_compare(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const auto rows = experiments::comparison_table(c.max_pairs);
  experiments::write_comparison_csv(out, rows);
  err << "pairs to reach p>=0.99:";
  for (const auto kind : {verify::ProtocolKind::kNA2010, verify::ProtocolKind::kAC1,
                          verify::ProtocolKind::kAC2}) {
    err << ' ' << verify::to_string(kind) << '=';
    bool found = false;
    for (const auto& r : rows) {
      if (r.protocol == kind && r.p_closed >= 0.99) {
        err << r.pairs_sacrificed;
        found = true;
        break;
      }
    }
    if (!found) err << '>' << c.max_pairs;
  }
  err << '\n';
  return 0;
}

int run_swap_demo(const CliConfig& c, std::ostream& out, std::ostream& err) {
  std::optional<netmem::Network> net;
  std::vector<netmem::NodeId> path;
  if (!c.topology.empty()) {
    std::ifstream in(c.topology);
    if (!in) {
      err << "cannot open topology file " << c.topology << '\n';
      return 1;
    }
    net = netmem::Network::from_topology(in, c.id_bits);
    if (c.path.empty()) {
      path = net->nodes();
    } else {
      for (const auto& name : split(c.path, ',')) path.emplace_back(name);
    }
  } else {
    if (c.chain < 3) throw std::invalid_argument("--chain needs at least 3 nodes");
    std::vector<std::pair<netmem::NodeId, netmem::NodeId>> links;
    for (int n = 1; n <= c.chain; ++n) {
      path.emplace_back("N" + std::to_string(n));
      if (n > 1) links.emplace_back(path[n - 2], path[n - 1]);
    }
    net = netmem::Network::build(path, links, c.id_bits);
  }

  const auto variant = qsim::BellVariant::parse(c.variant);
  std::vector<netmem::PairId> pairs;
  for (std::size_t h = 0; h + 1 < path.size(); ++h) {
    pairs.push_back(net->distribute_pair(path[h], path[h + 1], variant));
  }
  qsim::RandomSource rng(c.seed);
  const auto result = teleport::swap_chain(*net, path, pairs, rng);
  const auto& rec = net->pair(result.pair);

  out << "path";
  for (const auto& n : path) out << ' ' << n;
  out << '\n';
  for (std::size_t h = 0; h < result.announced.size(); ++h) {
    out << "hop " << h + 1 << " via " << path[h + 1] << " announced "
        << result.announced[h].label() << '\n';
  }
  const double fid = qsim::fidelity(rec.joint, qsim::bell_state(result.variant));
  out << "end_pair " << rec.owner_a << ' ' << rec.owner_b << " variant "
      << result.variant.label() << '\n';
  out << "fidelity " << format_fixed(fid) << '\n';
  out << "classical_bits " << net->transcript().total_bits() << '\n';
  err << "swap over " << path.size() << " nodes: variant "
      << result.variant.label() << ", fidelity " << format_fixed(fid) << '\n';
  return 0;
}

int run_keygen(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const netmem::NodeId n1("N1");
  const netmem::NodeId n2("N2");
  auto net = netmem::Network::build({n1, n2}, {{n1, n2}}, c.id_bits);
  const auto variant = qsim::BellVariant::parse(c.variant);
  if (c.pairs < 1) throw std::invalid_argument("--pairs must be positive");
  std::vector<netmem::PairId> ids;
  for (int p = 0; p < c.pairs; ++p) {
    ids.push_back(net.distribute_pair(n1, n2, variant));
  }
  qsim::RandomSource rng(c.seed);
  if (c.attacker_basis != "none") {
    adversary::compromise_node(net, n2, make_policy(c), rng);
  }
  const auto [key_a, key_b] = keys::sift_raw_key(net, n1, n2, ids, rng);
  const auto qber = keys::estimate_qber(key_a, key_b, c.sample_fraction, rng);
  out << "bits " << key_a.bits.size() << '\n';
  out << "key_a " << keys::to_hex(key_a.bits) << '\n';
  out << "key_b " << keys::to_hex(key_b.bits) << '\n';
  out << "disclosed " << qber.disclosed_positions.size() << '\n';
  out << "epsilon " << format_fixed(qber.epsilon) << '\n';
  out << "remaining_bits " << qber.remaining_key_a.size() << '\n';
  out << "remaining_a " << keys::to_hex(qber.remaining_key_a) << '\n';
  out << "remaining_b " << keys::to_hex(qber.remaining_key_b) << '\n';
  err << "keygen: " << key_a.bits.size() << " raw bits, epsilon "
      << format_fixed(qber.epsilon) << '\n';
  return 0;
}

}  // namespace

CliConfig parse_args(const std::vector<std::string>& args) {
  CliConfig c;
  CLI::App app{"Entanglement verification simulator", "entverify"};
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo detection probability of one protocol at one m");
  add_protocol(simulate, c, {"na2010", "ac1", "ac2"});
  simulate->add_option("--m", c.m, "Rounds per session")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  simulate->add_option("--trials", c.trials, "Independent sessions")
      ->capture_default_str();
  simulate->add_option("--variant", c.variant, "Bell variant of every pair")
      ->capture_default_str();
  simulate->add_option("--id-bits", c.id_bits, "Pair identifier width k")
      ->capture_default_str();
  add_attacker(simulate, c);
  add_seed_and_jobs(simulate, c);
  add_output(simulate, c);

  auto* curve =
      app.add_subcommand("curve", "Detection probability for m = 1..max-m");
  add_protocol(curve, c, {"na2010", "ac1", "ac2"});
  curve->add_option("--max-m", c.max_m, "Largest m")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  curve->add_option("--trials", c.trials, "Independent sessions per m")
      ->capture_default_str();
  add_attacker(curve, c);
  add_seed_and_jobs(curve, c);
  add_output(curve, c);

  auto* histogram =
      app.add_subcommand("histogram", "Frequency distribution f(p) of AC1/AC2");
  add_protocol(histogram, c, {"ac1", "ac2"});
  histogram->add_option("--samples", c.samples, "Random amplitude draws")
      ->capture_default_str();
  histogram->add_option("--scheme", c.scheme, "Amplitude sampling law")
      ->capture_default_str()
      ->check(CLI::IsMember(
          {"haar", "real_angle_uniform", "component_uniform"}));
  histogram->add_option("--bins", c.bins, "Uniform bins over [0,1]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_seed_and_jobs(histogram, c);
  add_output(histogram, c);

  auto* compare = app.add_subcommand(
      "compare", "Closed-form detection vs sacrificed pairs for all protocols");
  compare->add_option("--max-pairs", c.max_pairs, "Largest pair count")
      ->capture_default_str()
      ->check(CLI::Range(2, 1'000'000));
  add_output(compare, c);

  auto* swap = app.add_subcommand(
      "swap-demo", "Entanglement swapping along a chain of nodes");
  swap->add_option("--chain", c.chain, "Nodes in a generated linear chain")
      ->capture_default_str();
  swap->add_option("--topology", c.topology,
                   "Topology file, one 'nodeA nodeB' link per line")
      ->check(CLI::ExistingFile);
  swap->add_option("--path", c.path,
                   "Comma-separated node path (default: topology node order)");
  swap->add_option("--variant", c.variant, "Bell variant of every hop pair")
      ->capture_default_str();
  swap->add_option("--id-bits", c.id_bits, "Pair identifier width k")
      ->capture_default_str();
  swap->add_option("--seed", c.seed,
                   std::string("Seed (default ") + std::to_string(kDefaultSeed) +
                       ", env " + kSeedEnvVar + ")");
  add_output(swap, c);

  auto* keygen = app.add_subcommand(
      "keygen", "Sift raw keys from N1-N2 pairs and estimate the QBER");
  keygen->add_option("--pairs", c.pairs, "Pairs to sift")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  keygen->add_option("--variant", c.variant, "Bell variant of every pair")
      ->capture_default_str();
  keygen->add_option("--sample-fraction", c.sample_fraction,
                     "Fraction of bits disclosed for QBER estimation")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  keygen->add_option("--attacker-basis", c.attacker_basis,
                     std::string(kBasisHelp) + " [default: none]");
  keygen->add_option("--id-bits", c.id_bits, "Pair identifier width k")
      ->capture_default_str();
  keygen->add_option("--seed", c.seed,
                     std::string("Seed (default ") +
                         std::to_string(kDefaultSeed) + ", env " + kSeedEnvVar +
                         ")");
  add_output(keygen, c);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = app.exit(e, out, err);
    throw UsageError(code, code == 0 ? out.str() : err.str());
  }

  for (const auto* sub : app.get_subcommands()) {
    c.command = sub->get_name();
    if (c.command == "keygen" && sub->get_option("--attacker-basis")->count() == 0) {
      c.attacker_basis = "none";
    }
    const auto* seed_opt = sub->get_option_no_throw("--seed");
    if (seed_opt != nullptr && seed_opt->count() == 0) {
      if (const char* env = std::getenv(kSeedEnvVar)) {
        try {
          std::size_t used = 0;
          c.seed = std::stoull(env, &used);
          if (used != std::string(env).size()) throw std::invalid_argument(env);
        } catch (const std::exception&) {
          throw UsageError(2, std::string(kSeedEnvVar) +
                                  " must be an unsigned integer\n");
        }
      }
    }
  }

  try {
    if (c.attacker_basis != "none") adversary::AttackBasis::parse(c.attacker_basis);
    qsim::BellVariant::parse(c.variant);
  } catch (const std::invalid_argument& e) {
    throw UsageError(2, std::string(e.what()) + "\n");
  }
  if (c.sample_fraction <= 0 || c.sample_fraction >= 1) {
    throw UsageError(2, "--sample-fraction must lie strictly between 0 and 1\n");
  }
  return c;
}

int run(const CliConfig& c, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (!c.output.empty()) {
    file.open(c.output, std::ios::binary);
    if (!file) {
      err << "cannot open output file " << c.output << '\n';
      return 1;
    }
    sink = &file;
  }
  int status = 1;
  try {
    if (c.command == "simulate") status = run_simulate(c, *sink, err);
    else if (c.command == "curve") status = run_curve(c, *sink, err);
    else if (c.command == "histogram") status = run_histogram(c, *sink, err);
    else if (c.command == "compare") status = run_compare(c, *sink, err);
    else if (c.command == "swap-demo") status = run_swap_demo(c, *sink, err);
    else if (c.command == "keygen") status = run_keygen(c, *sink, err);
    else err << "unknown command " << c.command << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  sink->flush();
  if (!*sink) {
    err << "error: failed writing output\n";
    return 1;
  }
  return status;
}

int main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  try {
    return run(parse_args(args), out, err);
  } catch (const UsageError& e) {
    (e.exit_code() == 0 ? out : err) << e.what();
    return e.exit_code();
  }
}

}  // namespace entverify::cli
