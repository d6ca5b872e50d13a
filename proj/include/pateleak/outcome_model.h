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

// Output-class distribution of the Gaussian noisy argmax.
//
// For a histogram H and noise scale sigma, the aggregator returns class k with
// probability
//
//   Q_k(H) = integral  prod_{i != k} Phi((a - H_i) / sigma)
//                       * phi((a - H_k) / sigma) / sigma  da,
//
// where Phi and phi are the standard normal CDF and density. The integral is
// evaluated with the trapezoid rule on [c_k - w sigma, c_k + w sigma], where
// the grid center c_k is H_k unless a frozen set of centers is supplied.
// Both the distribution and its Jacobian are of this discretized form, so the
// Jacobian agrees with finite differences taken on the same frozen grid.

#ifndef PATELEAK_OUTCOME_MODEL_H_
#define PATELEAK_OUTCOME_MODEL_H_

#include <span>
#include <vector>

namespace pateleak {

double GaussianCdf(double x);
double GaussianPdf(double x);

struct IntegrationGrid {
  // Integration half-width in units of sigma. Must be >= 4.
  double half_width_sigmas = 6.0;
  // Requested spacing in votes. The spacing actually used is
  // min(step, sigma / 10) so small-sigma integrands stay resolved.
  double step = 1.0;

  // Throws std::invalid_argument on a degenerate grid.
  void Validate() const;
  double EffectiveStep(double sigma) const;
};

struct OutcomeDistribution {
  // Renormalized so the entries sum to one.
  std::vector<double> probs;
  // Sum of the trapezoid integrals before renormalization.
  double raw_mass = 0.0;
};

// Row k, column j holds dQ_k / dH_j, stored row-major.
struct OutcomeJacobian {
  size_t num_classes = 0;
  std::vector<double> entries;

  double operator()(size_t k, size_t j) const {
    return entries[k * num_classes + j];
  }
};

OutcomeDistribution ComputeOutcomeDistribution(
    std::span<const double> h, double sigma, const IntegrationGrid& grid = {});

// Same, with the per-class integration windows centered on `grid_centers`
// instead of on h.
OutcomeDistribution ComputeOutcomeDistribution(
    std::span<const double> h, double sigma, const IntegrationGrid& grid,
    std::span<const double> grid_centers);

// Jacobian of the renormalized distribution with the integration windows held
// fixed at their positions for h.
OutcomeJacobian ComputeOutcomeJacobian(std::span<const double> h, double sigma,
                                       const IntegrationGrid& grid = {});

// Distribution and Jacobian from one pass over the grid.
struct OutcomeWithJacobian {
  OutcomeDistribution distribution;
  OutcomeJacobian jacobian;
};
OutcomeWithJacobian ComputeOutcomeWithJacobian(std::span<const double> h,
                                               double sigma,
                                               const IntegrationGrid& grid = {});

}  // namespace pateleak

#endif  // PATELEAK_OUTCOME_MODEL_H_
