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

// Histogram reconstruction from repeated noisy-argmax answers.
//
// The attacker estimates the output distribution from sampled answers, then
// runs normalized gradient descent on ||Q(H_hat) - q_bar||_2 and finally
// shifts H_hat to sum to the known teacher count. Q depends only on the
// differences between entries, so the shift fixes the one free gauge.

#ifndef PATELEAK_RECONSTRUCT_H_
#define PATELEAK_RECONSTRUCT_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pateleak/histogram.h"
#include "pateleak/mechanism.h"
#include "pateleak/outcome_model.h"

namespace pateleak {

struct MonteCarloEstimate {
  std::vector<double> q_bar;
  std::vector<double> std_err;
  int64_t m = 0;
};

MonteCarloEstimate EstimateDistribution(const QuerySample& sample);
MonteCarloEstimate EstimateDistribution(std::span<const int64_t> counts);

enum class StopMode { kLossThreshold, kNegativeEntry, kBoth };
enum class InitMode { kZeros, kUniformN };

enum class StopReason {
  kLossThreshold,   // ||Q(H_hat) - q_bar|| fell below the threshold.
  kNegativeEntry,   // Next step would put a negative entry in the estimate.
  kStalled,         // Loss rose again after the one-time step downgrade.
  kFlatGradient,    // Gradient vanished; no descent direction left.
  kMaxIterations,
};

std::string_view ToString(StopMode mode);
std::string_view ToString(InitMode mode);
std::string_view ToString(StopReason reason);
StopMode ParseStopMode(std::string_view text);
InitMode ParseInitMode(std::string_view text);

// Only kMaxIterations counts as a failure to converge.
inline bool Converged(StopReason reason) {
  return reason != StopReason::kMaxIterations;
}

struct OptimizerConfig {
  double loss_threshold = 0.01;
  // Step length in votes is lr_numerator (the gradient is normalized).
  double lr_numerator_initial = 10.0;
  double lr_numerator_final = 1.0;
  // Switch from the initial to the final numerator once loss drops below.
  double lr_switch_loss = 0.1;
  int64_t max_iters = 200000;
  StopMode stop_mode = StopMode::kNegativeEntry;
  InitMode init = InitMode::kZeros;
  IntegrationGrid grid;

  void Validate() const;
};

struct TracePoint {
  int64_t iteration = 0;
  double loss = 0.0;
  double lr_numerator = 0.0;
};

struct ReconstructionResult {
  RealHistogram estimate;      // Shifted to sum to N.
  RealHistogram raw_estimate;  // Before the shift.
  double final_loss = 0.0;
  int64_t iterations = 0;
  StopReason stop_reason = StopReason::kMaxIterations;
  std::optional<double> error;
  // One entry per accepted step, starting with the initial point.
  std::vector<TracePoint> loss_trace;
};

struct LossAndGradient {
  double value = 0.0;
  std::vector<double> gradient;
};

// ||Q(estimate) - q_bar||_2 and its gradient with respect to the estimate.
// The gradient is the zero vector where the loss is exactly zero.
LossAndGradient Loss(std::span<const double> estimate,
                     std::span<const double> q_bar, double sigma,
                     const IntegrationGrid& grid = {});

ReconstructionResult Reconstruct(const MonteCarloEstimate& estimate,
                                 double sigma, int64_t n,
                                 const OptimizerConfig& config = {});

// Fills in result.error against the known histogram.
ReconstructionResult Reconstruct(const MonteCarloEstimate& estimate,
                                 double sigma, const VoteHistogram& truth,
                                 const OptimizerConfig& config = {});

// CSV with header `iteration,loss,lr_numerator`.
void WriteTrace(std::ostream& out, std::span<const TracePoint> trace);

}  // namespace pateleak

#endif  // PATELEAK_RECONSTRUCT_H_
