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

#ifndef ENTVERIFY_CLI_H
#define ENTVERIFY_CLI_H

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace entverify::cli {

/// Seed used when neither --seed nor the environment override is given.
inline constexpr std::uint64_t kDefaultSeed = 42;
/// Environment variable that overrides the default seed.
inline constexpr const char* kSeedEnvVar = "ENTVERIFY_SEED";

struct CliConfig {
  std::string command;
  std::string protocol;
  int m = 10;
  int max_m = 20;
  std::uint64_t trials = 100'000;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = kDefaultSeed;
  std::string attacker_basis = "computational";
  std::string attacker_classical = "honest";
  std::string scheme = "haar";
  std::string variant = "00";
  int id_bits = 16;
  int bins = 100;
  int jobs = 1;
  int max_pairs = 40;
  int chain = 3;
  std::string topology;
  std::string path;
  int pairs = 64;
  double sample_fraction = 0.25;
  /// Empty means stdout.
  std::string output;
};

/// Thrown by parse_args for --help (exit_code 0) and for usage errors.
class UsageError : public std::runtime_error {
 public:
  UsageError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const { return exit_code_; }

 private:
  int exit_code_;
};

/// Parses argv (without the program name) into a validated config.
CliConfig parse_args(const std::vector<std::string>& args);

/// Runs a parsed config. CSV goes to the output path or `out`; the one-line
/// summary goes to `err`. Returns the process exit status.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + run, reporting usage errors on `err` (help on `out`).
int main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

}  // namespace entverify::cli

#endif  // ENTVERIFY_CLI_H
