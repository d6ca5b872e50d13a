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

#include "pateleak/privacy.h"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pateleak {

std::vector<double> DefaultAlphaGrid() {
  std::vector<double> grid;
  for (int i = 21; i <= 200; ++i) grid.push_back(i / 20.0);
  for (int a = 11; a <= 512; ++a) grid.push_back(a);
  return grid;
}

void PrivacyParams::Validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be positive and finite");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (alpha_grid.empty()) throw std::invalid_argument("empty alpha grid");
  for (double a : alpha_grid) {
    if (!(a > 1.0)) throw std::invalid_argument("RDP orders must exceed 1");
  }
}

double RdpPerQuery(double sigma, double alpha) {
  if (!(sigma > 0.0) || !(alpha > 1.0)) {
    throw std::invalid_argument("need sigma > 0 and alpha > 1");
  }
  return alpha / (sigma * sigma);
}

RdpCurve PerQueryCurve(double sigma, const std::vector<double>& alpha_grid) {
  RdpCurve curve;
  curve.alphas = alpha_grid;
  curve.epsilons.reserve(alpha_grid.size());
  for (double a : alpha_grid) curve.epsilons.push_back(RdpPerQuery(sigma, a));
  return curve;
}

RdpCurve Compose(const RdpCurve& per_query, int64_t m) {
  if (m < 0) throw std::invalid_argument("query count must be >= 0");
  RdpCurve out = per_query;
  for (double& e : out.epsilons) e *= static_cast<double>(m);
  return out;
}

EpsilonDelta ToEpsDelta(const RdpCurve& composed, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (composed.alphas.empty()) throw std::invalid_argument("empty alpha grid");
  const double log_inv_delta = std::log(1.0 / delta);
  EpsilonDelta best{std::numeric_limits<double>::infinity(), 0.0};
  for (size_t i = 0; i < composed.alphas.size(); ++i) {
    const double a = composed.alphas[i];
    const double eps = composed.epsilons[i] + log_inv_delta / (a - 1.0);
    if (eps < best.epsilon) best = {eps, a};
  }
  return best;
}

PrivacyAccount Account(const PrivacyParams& params, int64_t m) {
  params.Validate();
  PrivacyAccount account;
  account.m = m;
  account.per_query = PerQueryCurve(params.sigma, params.alpha_grid);
  account.composed = Compose(account.per_query, m);
  const EpsilonDelta converted = ToEpsDelta(account.composed, params.delta);
  account.epsilon = converted.epsilon;
  account.alpha_star = converted.alpha_star;
  return account;
}

int64_t MaxQueriesWithinBudget(const PrivacyParams& params,
                               double budget_epsilon) {
  if (!(budget_epsilon > 0.0)) {
    throw std::invalid_argument("privacy budget must be positive");
  }
  params.Validate();
  const RdpCurve per_query = PerQueryCurve(params.sigma, params.alpha_grid);
  auto within = [&](int64_t m) {
    return ToEpsDelta(Compose(per_query, m), params.delta).epsilon <=
           budget_epsilon;
  };
  if (!within(1)) return 0;
  // Exponential bracketing, then bisection on [lo, hi).
  int64_t lo = 1;
  int64_t hi = 2;
  while (within(hi)) {
    lo = hi;
    if (hi > (int64_t{1} << 60)) return hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const int64_t mid = lo + (hi - lo) / 2;
    if (within(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

BudgetGate::BudgetGate(const PrivacyParams& params, double budget_epsilon)
    : limit_(MaxQueriesWithinBudget(params, budget_epsilon)) {}

bool BudgetGate::TryAnswer() {
  std::lock_guard<std::mutex> lock(mu_);
  if (answered_ >= limit_) return false;
  ++answered_;
  return true;
}

int64_t BudgetGate::answered() const {
  std::lock_guard<std::mutex> lock(mu_);
  return answered_;
}

}  // namespace pateleak
