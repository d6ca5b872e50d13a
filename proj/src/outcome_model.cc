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

#include "pateleak/outcome_model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pateleak {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;

struct GridLayout {
  size_t intervals = 0;
  // Spacing in standardized units (votes / sigma).
  double du = 0.0;
  double half_width = 0.0;
};

GridLayout Layout(double sigma, const IntegrationGrid& grid) {
  grid.Validate();
  const double step = grid.EffectiveStep(sigma);
  const double span = 2.0 * grid.half_width_sigmas * sigma;
  GridLayout layout;
  layout.intervals =
      std::max<size_t>(2, static_cast<size_t>(std::ceil(span / step - 1e-9)));
  layout.du = 2.0 * grid.half_width_sigmas /
              static_cast<double>(layout.intervals);
  layout.half_width = grid.half_width_sigmas;
  return layout;
}

void CheckInputs(std::span<const double> h, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be positive and finite");
  }
  if (h.size() < 2) throw std::invalid_argument("need at least two classes");
}

// Shared kernel. Accumulates the raw (unnormalized) integrals into `raw` and,
// when `raw_jac` is non-null, their derivatives with the grid frozen.
void Integrate(std::span<const double> h, double sigma,
               std::span<const double> centers, const GridLayout& layout,
               std::vector<double>& raw, std::vector<double>* raw_jac) {
  const size_t c = h.size();
  raw.assign(c, 0.0);
  if (raw_jac != nullptr) raw_jac->assign(c * c, 0.0);

  std::vector<double> cdf(c), pdf(c), prefix(c + 1), suffix(c + 1);
  std::vector<double> offset(c);
  for (size_t k = 0; k < c; ++k) {
    // Standardized position of the window start relative to H_k.
    const double u0 = (centers[k] - h[k]) / sigma - layout.half_width;
    for (size_t i = 0; i < c; ++i) offset[i] = (h[k] - h[i]) / sigma;

    for (size_t n = 0; n <= layout.intervals; ++n) {
      const double weight =
          (n == 0 || n == layout.intervals) ? 0.5 * layout.du : layout.du;
      const double u = u0 + static_cast<double>(n) * layout.du;
      const double density = GaussianPdf(u);
      if (density == 0.0) continue;

      for (size_t i = 0; i < c; ++i) {
        if (i == k) {
          cdf[i] = 1.0;
          continue;
        }
        const double z = u + offset[i];
        cdf[i] = GaussianCdf(z);
        if (raw_jac != nullptr) pdf[i] = GaussianPdf(z);
      }
      prefix[0] = 1.0;
      for (size_t i = 0; i < c; ++i) prefix[i + 1] = prefix[i] * cdf[i];
      const double others = prefix[c];
      raw[k] += weight * density * others;

      if (raw_jac == nullptr) continue;
      suffix[c] = 1.0;
      for (size_t i = c; i-- > 0;) suffix[i] = suffix[i + 1] * cdf[i];
      double* row = raw_jac->data() + k * c;
      // d/dH_k of phi((a - H_k)/sigma)/sigma is phi(u) u / sigma^2.
      row[k] += weight * density * u * others / sigma;
      for (size_t j = 0; j < c; ++j) {
        if (j == k) continue;
        const double without_j = prefix[j] * suffix[j + 1];
        row[j] -= weight * density * pdf[j] * without_j / sigma;
      }
    }
  }
}

}  // namespace

double GaussianCdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double GaussianPdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

void IntegrationGrid::Validate() const {
  if (!(half_width_sigmas >= 4.0) || !std::isfinite(half_width_sigmas)) {
    throw std::invalid_argument("integration half-width must be >= 4 sigma");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("integration step must be positive");
  }
}

double IntegrationGrid::EffectiveStep(double sigma) const {
  return std::min(step, sigma / 10.0);
}

OutcomeDistribution ComputeOutcomeDistribution(std::span<const double> h,
                                               double sigma,
                                               const IntegrationGrid& grid) {
  return ComputeOutcomeDistribution(h, sigma, grid, h);
}

OutcomeDistribution ComputeOutcomeDistribution(
    std::span<const double> h, double sigma, const IntegrationGrid& grid,
    std::span<const double> grid_centers) {
  CheckInputs(h, sigma);
  if (grid_centers.size() != h.size()) {
    throw std::invalid_argument("grid centers must match class count");
  }
  const GridLayout layout = Layout(sigma, grid);
  OutcomeDistribution out;
  Integrate(h, sigma, grid_centers, layout, out.probs, nullptr);
  double mass = 0.0;
  for (double p : out.probs) mass += p;
  out.raw_mass = mass;
  for (double& p : out.probs) p = std::clamp(p / mass, 0.0, 1.0);
  return out;
}

OutcomeWithJacobian ComputeOutcomeWithJacobian(std::span<const double> h,
                                               double sigma,
                                               const IntegrationGrid& grid) {
  CheckInputs(h, sigma);
  const GridLayout layout = Layout(sigma, grid);
  const size_t c = h.size();
  std::vector<double> raw, raw_jac;
  Integrate(h, sigma, h, layout, raw, &raw_jac);

  double mass = 0.0;
  for (double p : raw) mass += p;

  OutcomeWithJacobian out;
  out.distribution.raw_mass = mass;
  out.distribution.probs.resize(c);
  for (size_t k = 0; k < c; ++k) out.distribution.probs[k] = raw[k] / mass;

  // Quotient rule for Q_k = R_k / sum_l R_l.
  std::vector<double> mass_grad(c, 0.0);
  for (size_t k = 0; k < c; ++k) {
    for (size_t j = 0; j < c; ++j) mass_grad[j] += raw_jac[k * c + j];
  }
  out.jacobian.num_classes = c;
  out.jacobian.entries.resize(c * c);
  for (size_t k = 0; k < c; ++k) {
    const double qk = out.distribution.probs[k];
    for (size_t j = 0; j < c; ++j) {
      out.jacobian.entries[k * c + j] =
          (raw_jac[k * c + j] - qk * mass_grad[j]) / mass;
    }
  }
  for (double& p : out.distribution.probs) p = std::clamp(p, 0.0, 1.0);
  return out;
}

OutcomeJacobian ComputeOutcomeJacobian(std::span<const double> h, double sigma,
                                       const IntegrationGrid& grid) {
  return ComputeOutcomeWithJacobian(h, sigma, grid).jacobian;
}

}  // namespace pateleak
