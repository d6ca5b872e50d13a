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

// Renyi-DP accounting for a stream of noisy-argmax answers.
//
// Each answer of the Gaussian noisy argmax is (alpha, alpha / sigma^2)-RDP
// for vote histograms where one record moves one vote between two bins. RDP
// composes additively, and the total converts to (epsilon, delta)-DP as
//
//   epsilon = min_alpha  m * alpha / sigma^2 + ln(1 / delta) / (alpha - 1).
//
// This is the data-independent bound; it does not depend on the histogram.

#ifndef PATELEAK_PRIVACY_H_
#define PATELEAK_PRIVACY_H_

#include <cstdint>
#include <mutex>
#include <vector>

namespace pateleak {

// Orders 1.05, 1.10, ..., 10.0 followed by every integer 11..512.
std::vector<double> DefaultAlphaGrid();

struct PrivacyParams {
  double sigma = 40.0;
  double delta = 1e-5;
  std::vector<double> alpha_grid = DefaultAlphaGrid();

  void Validate() const;
};

// epsilon_RDP(alpha) sampled on a grid of orders.
struct RdpCurve {
  std::vector<double> alphas;
  std::vector<double> epsilons;
};

double RdpPerQuery(double sigma, double alpha);

RdpCurve PerQueryCurve(double sigma, const std::vector<double>& alpha_grid);

// Pointwise multiplication by m.
RdpCurve Compose(const RdpCurve& per_query, int64_t m);

struct EpsilonDelta {
  double epsilon = 0.0;
  double alpha_star = 0.0;
};

EpsilonDelta ToEpsDelta(const RdpCurve& composed, double delta);

struct PrivacyAccount {
  RdpCurve per_query;
  RdpCurve composed;
  double epsilon = 0.0;
  double alpha_star = 0.0;
  int64_t m = 0;
};

PrivacyAccount Account(const PrivacyParams& params, int64_t m);

// Largest m whose epsilon stays within the budget; 0 if one query is
// already too many.
int64_t MaxQueriesWithinBudget(const PrivacyParams& params,
                               double budget_epsilon);

// Answers queries until the budget would be exceeded. Thread-safe.
class BudgetGate {
 public:
  BudgetGate(const PrivacyParams& params, double budget_epsilon);

  // Charges one query. Returns false, without charging, once the next answer
  // would push epsilon past the budget.
  bool TryAnswer();

  int64_t answered() const;
  int64_t limit() const { return limit_; }

 private:
  int64_t limit_;
  mutable std::mutex mu_;
  int64_t answered_ = 0;
};

}  // namespace pateleak

#endif  // PATELEAK_PRIVACY_H_
