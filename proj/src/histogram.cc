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

#include "pateleak/histogram.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pateleak {

VoteHistogram::VoteHistogram(std::vector<int64_t> counts)
    : counts_(std::move(counts)) {
  if (counts_.size() < 2) {
    throw std::invalid_argument("histogram needs at least two classes");
  }
  for (int64_t v : counts_) {
    if (v < 0) throw std::invalid_argument("histogram counts must be >= 0");
    total_ += v;
  }
  if (total_ <= 0) {
    throw std::invalid_argument("histogram must contain at least one vote");
  }
}

std::vector<double> VoteHistogram::as_real() const {
  return {counts_.begin(), counts_.end()};
}

std::string_view ToString(ConsensusGroup group) {
  switch (group) {
    case ConsensusGroup::kLow:
      return "low";
    case ConsensusGroup::kMedium:
      return "medium";
    case ConsensusGroup::kHigh:
      return "high";
  }
  return "unknown";
}

double Consensus(const VoteHistogram& h) {
  const auto counts = h.counts();
  return static_cast<double>(*std::max_element(counts.begin(), counts.end())) /
         static_cast<double>(h.total());
}

double L1Error(const VoteHistogram& truth, std::span<const double> estimate) {
  if (estimate.size() != truth.num_classes()) {
    throw std::invalid_argument(
        "l1 error: estimate has " + std::to_string(estimate.size()) +
        " classes, truth has " + std::to_string(truth.num_classes()));
  }
  double diff = 0.0;
  for (size_t i = 0; i < estimate.size(); ++i) {
    diff += std::abs(static_cast<double>(truth[i]) - estimate[i]);
  }
  return diff / (2.0 * static_cast<double>(truth.total()));
}

RealHistogram ShiftToTotal(std::span<const double> estimate, int64_t n) {
  if (n <= 0) throw std::invalid_argument("shift target must be positive");
  if (estimate.empty()) throw std::invalid_argument("empty estimate");
  const double sum = std::accumulate(estimate.begin(), estimate.end(), 0.0);
  const double offset =
      (static_cast<double>(n) - sum) / static_cast<double>(estimate.size());
  RealHistogram out(estimate.begin(), estimate.end());
  for (double& v : out) v += offset;
  return out;
}

namespace {

double Quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<ConsensusGroup> TertileSplit(
    std::span<const VoteHistogram> hists) {
  if (hists.empty()) throw std::invalid_argument("tertile split of nothing");
  std::vector<double> values;
  values.reserve(hists.size());
  for (const auto& h : hists) values.push_back(Consensus(h));
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const double lower = Quantile(sorted, 1.0 / 3.0);
  const double upper = Quantile(sorted, 2.0 / 3.0);

  std::vector<ConsensusGroup> groups;
  groups.reserve(values.size());
  for (double v : values) {
    if (v <= lower) {
      groups.push_back(ConsensusGroup::kLow);
    } else if (v <= upper) {
      groups.push_back(ConsensusGroup::kMedium);
    } else {
      groups.push_back(ConsensusGroup::kHigh);
    }
  }
  return groups;
}

}  // namespace pateleak
