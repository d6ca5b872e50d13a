// Copyright 2026 The pateleak Authors.
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

// Experiment commands behind the `pateleak` executable. Each command
// validates its options, runs, and writes one CSV report atomically (a
// temporary file renamed into place on success). Every report starts with a
// "# pateleak <version>" line; the rest is a pure function of the options.

#ifndef PATELEAK_CLI_H_
#define PATELEAK_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pateleak/attribute.h"
#include "pateleak/reconstruct.h"

namespace pateleak::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitValidation = 3,
  kExitNonConvergence = 4,
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exactly one of m / budget must be set.
struct QueryLimit {
  std::optional<int64_t> m;
  std::optional<double> budget;
  double delta = 1e-5;

  void Validate() const;
  // m itself, or the largest m the budget affords at this sigma.
  int64_t QueriesFor(double sigma) const;
};

struct SimulateOptions {
  std::string input;
  std::string output;
  double sigma = 40.0;
  QueryLimit limit;
  uint64_t seed = 0;
  int workers = 1;
};

struct ReconstructOptions {
  // Exactly one of input (histogram file, ground truth known) and samples
  // (sample file written by simulate) is set.
  std::string input;
  std::string samples;
  std::string output;
  std::string trace_dir;
  std::vector<double> sigmas = {40.0};
  QueryLimit limit;
  int repeats = 1;
  uint64_t seed = 0;
  int workers = 1;
  OptimizerConfig optimizer;
};

struct AccountOptions {
  std::string output;
  std::vector<int64_t> ms;
  std::vector<double> sigmas = {40.0};
  std::optional<double> budget;
  double delta = 1e-5;
};

struct DetectOptions {
  std::string input;
  std::string output;
  double tau = kDefaultConsensusThreshold;
};

struct E2eOptions {
  std::string output;
  std::string metrics_output;
  std::string population_output;
  SynthPopulationSpec population{250, 10, 0.5, 0.95, 0.5, 0.03, 0};
  int64_t size = 20;
  double sigma = 40.0;
  QueryLimit limit;
  double tau = kDefaultConsensusThreshold;
  uint64_t seed = 0;
  int workers = 1;
  OptimizerConfig optimizer;
};

// Seed for work item (a, b) under a base seed.
uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b);

// Each returns an ExitCode. Validation problems throw UsageError,
// std::invalid_argument or std::runtime_error; Main() maps those to codes.
int Simulate(const SimulateOptions& options);
int ReconstructCommand(const ReconstructOptions& options);
// Same runner as ReconstructCommand; requires a non-empty sigma list and a
// ground-truth histogram file.
int Sweep(const ReconstructOptions& options);
int AccountCommand(const AccountOptions& options);
int Detect(const DetectOptions& options);
int E2e(const E2eOptions& options);

// Full command line, including the program name in args[0].
int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

}  // namespace pateleak::cli

#endif  // PATELEAK_CLI_H_
