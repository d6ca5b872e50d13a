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

#include "pateleak/reconstruct.h"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace pateleak {
namespace {

double Norm(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum);
}

bool HasNegativeEntry(std::span<const double> h) {
  for (double v : h) {
    if (v < 0.0) return true;
  }
  return false;
}

}  // namespace

MonteCarloEstimate EstimateDistribution(std::span<const int64_t> counts) {
  MonteCarloEstimate out;
  for (int64_t c : counts) {
    if (c < 0) throw std::invalid_argument("negative answer count");
    out.m += c;
  }
  if (out.m <= 0) throw std::invalid_argument("empty query sample");
  const auto m = static_cast<double>(out.m);
  out.q_bar.reserve(counts.size());
  out.std_err.reserve(counts.size());
  for (int64_t c : counts) {
    const double q = static_cast<double>(c) / m;
    out.q_bar.push_back(q);
    out.std_err.push_back(std::sqrt(q * (1.0 - q) / m));
  }
  return out;
}

MonteCarloEstimate EstimateDistribution(const QuerySample& sample) {
  return EstimateDistribution(sample.counts);
}

std::string_view ToString(StopMode mode) {
  switch (mode) {
    case StopMode::kLossThreshold:
      return "loss";
    case StopMode::kNegativeEntry:
      return "negative";
    case StopMode::kBoth:
      return "both";
  }
  return "unknown";
}

std::string_view ToString(InitMode mode) {
  return mode == InitMode::kZeros ? "zeros" : "uniform";
}

std::string_view ToString(StopReason reason) {
  switch (reason) {
    case StopReason::kLossThreshold:
      return "loss_threshold";
    case StopReason::kNegativeEntry:
      return "negative_entry";
    case StopReason::kStalled:
      return "stalled";
    case StopReason::kFlatGradient:
      return "flat_gradient";
    case StopReason::kMaxIterations:
      return "max_iterations";
  }
  return "unknown";
}

StopMode ParseStopMode(std::string_view text) {
  if (text == "loss") return StopMode::kLossThreshold;
  if (text == "negative") return StopMode::kNegativeEntry;
  if (text == "both") return StopMode::kBoth;
  throw std::invalid_argument("unknown stop mode: " + std::string(text));
}

InitMode ParseInitMode(std::string_view text) {
  if (text == "zeros") return InitMode::kZeros;
  if (text == "uniform") return InitMode::kUniformN;
  throw std::invalid_argument("unknown init mode: " + std::string(text));
}

void OptimizerConfig::Validate() const {
  if (!(loss_threshold > 0.0) || !(lr_switch_loss > 0.0)) {
    throw std::invalid_argument("loss thresholds must be positive");
  }
  if (!(lr_numerator_initial > 0.0) || !(lr_numerator_final > 0.0)) {
    throw std::invalid_argument("learning-rate numerators must be positive");
  }
  if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
  grid.Validate();
}

LossAndGradient Loss(std::span<const double> estimate,
                     std::span<const double> q_bar, double sigma,
                     const IntegrationGrid& grid) {
  if (estimate.size() != q_bar.size()) {
    throw std::invalid_argument(
        "loss: estimate has " + std::to_string(estimate.size()) +
        " classes, q_bar has " + std::to_string(q_bar.size()));
  }
  const auto model = ComputeOutcomeWithJacobian(estimate, sigma, grid);
  const size_t c = estimate.size();
  std::vector<double> residual(c);
  for (size_t k = 0; k < c; ++k) {
    residual[k] = model.distribution.probs[k] - q_bar[k];
  }
  LossAndGradient out;
  out.value = Norm(residual);
  out.gradient.assign(c, 0.0);
  if (out.value == 0.0) return out;
  for (size_t k = 0; k < c; ++k) {
    const double scale = residual[k] / out.value;
    for (size_t j = 0; j < c; ++j) {
      out.gradient[j] += scale * model.jacobian(k, j);
    }
  }
  return out;
}

ReconstructionResult Reconstruct(const MonteCarloEstimate& estimate,
                                 double sigma, int64_t n,
                                 const OptimizerConfig& config) {
  config.Validate();
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (n <= 0) throw std::invalid_argument("teacher count must be positive");
  const size_t c = estimate.q_bar.size();
  if (c < 2) throw std::invalid_argument("need at least two classes");

  const bool stop_on_loss = config.stop_mode != StopMode::kNegativeEntry;
  const bool stop_on_negative = config.stop_mode != StopMode::kLossThreshold;

  RealHistogram current(
      c, config.init == InitMode::kZeros
             ? 0.0
             : static_cast<double>(n) / static_cast<double>(c));
  LossAndGradient state = Loss(current, estimate.q_bar, sigma, config.grid);
  double numerator = config.lr_numerator_initial;
  bool downgraded = false;

  ReconstructionResult result;
  result.loss_trace.push_back({0, state.value, numerator});
  result.stop_reason = StopReason::kMaxIterations;

  int64_t iter = 0;
  while (iter < config.max_iters) {
    if (stop_on_loss && state.value < config.loss_threshold) {
      result.stop_reason = StopReason::kLossThreshold;
      break;
    }
    const double grad_norm = Norm(state.gradient);
    if (!(grad_norm > 0.0)) {
      result.stop_reason = StopReason::kFlatGradient;
      break;
    }
    if (state.value < config.lr_switch_loss) {
      numerator = std::min(numerator, config.lr_numerator_final);
    }

    ++iter;
    RealHistogram candidate = current;
    const double rate = numerator / grad_norm;
    for (size_t j = 0; j < c; ++j) candidate[j] -= rate * state.gradient[j];

    if (stop_on_negative && HasNegativeEntry(ShiftToTotal(candidate, n))) {
      result.stop_reason = StopReason::kNegativeEntry;
      break;
    }

    LossAndGradient next = Loss(candidate, estimate.q_bar, sigma, config.grid);
    if (next.value > state.value) {
      // One-time step downgrade, then give up on the next rise.
      if (downgraded) {
        result.stop_reason = StopReason::kStalled;
        break;
      }
      downgraded = true;
      numerator *= 0.1;
      continue;
    }
    current = std::move(candidate);
    state = std::move(next);
    result.loss_trace.push_back({iter, state.value, numerator});
  }

  result.iterations = iter;
  result.final_loss = state.value;
  result.raw_estimate = current;
  result.estimate = ShiftToTotal(current, n);
  return result;
}

ReconstructionResult Reconstruct(const MonteCarloEstimate& estimate,
                                 double sigma, const VoteHistogram& truth,
                                 const OptimizerConfig& config) {
  if (estimate.q_bar.size() != truth.num_classes()) {
    throw std::invalid_argument("estimate and truth class counts differ");
  }
  ReconstructionResult result =
      Reconstruct(estimate, sigma, truth.total(), config);
  result.error = L1Error(truth, result.estimate);
  return result;
}

void WriteTrace(std::ostream& out, std::span<const TracePoint> trace) {
  out << "iteration,loss,lr_numerator\n";
  for (const auto& p : trace) {
    out << p.iteration << ',' << p.loss << ',' << p.lr_numerator << '\n';
  }
}

}  // namespace pateleak
