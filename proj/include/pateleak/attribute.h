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

// Minority-group inference from vote histograms. Members of an
// under-represented group tend to split the teachers, so a histogram whose
// consensus is at or below a threshold is flagged as a minority member.

#ifndef PATELEAK_ATTRIBUTE_H_
#define PATELEAK_ATTRIBUTE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pateleak/histogram.h"

namespace pateleak {

enum class Group { kMinority, kMajority };

std::string_view ToString(Group group);
Group ParseGroup(std::string_view text);

inline constexpr double kDefaultConsensusThreshold = 0.75;

// Majority iff consensus(h) > tau.
Group ClassifyByConsensus(const VoteHistogram& h,
                          double tau = kDefaultConsensusThreshold);
// For reconstructed histograms: consensus is max / sum.
Group ClassifyByConsensus(std::span<const double> h,
                          double tau = kDefaultConsensusThreshold);

struct LabeledHistogram {
  std::string id;
  VoteHistogram histogram;
  Group group;  // Ground truth.
};

struct Prediction {
  std::string id;
  Group group;
};

// Minority is the positive class.
struct AttributeMetrics {
  int64_t true_positives = 0;
  int64_t false_positives = 0;
  int64_t true_negatives = 0;
  int64_t false_negatives = 0;
  double precision = 0.0;
  double recall = 0.0;
  double accuracy = 0.0;
  // False when nothing was predicted Minority; precision is then reported 0.
  bool precision_defined = false;
};

// Predictions are matched to truths by id. Throws std::invalid_argument if the
// two id sets differ.
AttributeMetrics Evaluate(std::span<const Prediction> predictions,
                          std::span<const LabeledHistogram> truths);

struct SynthPopulationSpec {
  int64_t n_teachers = 250;
  int n_classes = 10;
  double minority_fraction = 0.5;
  double majority_consensus_mean = 0.9;
  double minority_consensus_mean = 0.5;
  // Standard deviation of the per-member consensus draw.
  double spread = 0.05;
  uint64_t seed = 0;

  void Validate() const;
};

// round(minority_fraction * size) minority members come first, then the
// majority. Member i draws its consensus from N(mean, spread^2) truncated to
// [1/c, 1], puts round(consensus * N) votes on a uniformly chosen top class
// and deals the remaining votes one at a time uniformly over the other
// classes, skipping any class that has caught up with the top. Member i uses
// its own random stream, so the output is a pure function of (spec, size).
std::vector<LabeledHistogram> GeneratePopulation(
    const SynthPopulationSpec& spec, int64_t size);

}  // namespace pateleak

#endif  // PATELEAK_ATTRIBUTE_H_
