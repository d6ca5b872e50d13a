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

#include "pateleak/attribute.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "pateleak/mechanism.h"

namespace pateleak {

std::string_view ToString(Group group) {
  return group == Group::kMinority ? "minority" : "majority";
}

Group ParseGroup(std::string_view text) {
  if (text == "minority") return Group::kMinority;
  if (text == "majority") return Group::kMajority;
  throw std::invalid_argument("unknown group tag: " + std::string(text));
}

Group ClassifyByConsensus(const VoteHistogram& h, double tau) {
  return Consensus(h) > tau ? Group::kMajority : Group::kMinority;
}

Group ClassifyByConsensus(std::span<const double> h, double tau) {
  if (h.empty()) throw std::invalid_argument("empty histogram");
  const double total = std::accumulate(h.begin(), h.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("histogram sums to <= 0");
  const double top = *std::max_element(h.begin(), h.end());
  return top / total > tau ? Group::kMajority : Group::kMinority;
}

AttributeMetrics Evaluate(std::span<const Prediction> predictions,
                          std::span<const LabeledHistogram> truths) {
  if (predictions.size() != truths.size()) {
    throw std::invalid_argument("prediction and truth counts differ");
  }
  std::unordered_map<std::string_view, Group> truth_by_id;
  for (const auto& t : truths) {
    if (!truth_by_id.emplace(t.id, t.group).second) {
      throw std::invalid_argument("duplicate id: " + t.id);
    }
  }
  AttributeMetrics out;
  for (const auto& p : predictions) {
    auto it = truth_by_id.find(p.id);
    if (it == truth_by_id.end()) {
      throw std::invalid_argument("prediction for unknown id: " + p.id);
    }
    const bool predicted_minority = p.group == Group::kMinority;
    const bool is_minority = it->second == Group::kMinority;
    truth_by_id.erase(it);
    if (predicted_minority && is_minority) ++out.true_positives;
    if (predicted_minority && !is_minority) ++out.false_positives;
    if (!predicted_minority && !is_minority) ++out.true_negatives;
    if (!predicted_minority && is_minority) ++out.false_negatives;
  }
  const int64_t predicted_pos = out.true_positives + out.false_positives;
  const int64_t actual_pos = out.true_positives + out.false_negatives;
  const auto total = static_cast<double>(predictions.size());
  out.precision_defined = predicted_pos > 0;
  if (out.precision_defined) {
    out.precision = static_cast<double>(out.true_positives) /
                    static_cast<double>(predicted_pos);
  }
  if (actual_pos > 0) {
    out.recall = static_cast<double>(out.true_positives) /
                 static_cast<double>(actual_pos);
  }
  if (total > 0) {
    out.accuracy =
        static_cast<double>(out.true_positives + out.true_negatives) / total;
  }
  return out;
}

void SynthPopulationSpec::Validate() const {
  if (n_teachers <= 0) throw std::invalid_argument("need at least one teacher");
  if (n_classes < 2) throw std::invalid_argument("need at least two classes");
  if (!(minority_fraction > 0.0 && minority_fraction < 1.0)) {
    throw std::invalid_argument("minority fraction must lie in (0, 1)");
  }
  const double floor = 1.0 / n_classes;
  for (double mean : {majority_consensus_mean, minority_consensus_mean}) {
    if (!(mean > floor && mean <= 1.0)) {
      throw std::invalid_argument("consensus means must lie in (1/c, 1]");
    }
  }
  if (!(minority_consensus_mean < majority_consensus_mean)) {
    throw std::invalid_argument(
        "minority consensus mean must be below the majority mean");
  }
  if (!(spread > 0.0)) throw std::invalid_argument("spread must be positive");
}

namespace {

VoteHistogram DrawMember(const SynthPopulationSpec& spec, double mean,
                         NoiseStream& stream, std::mt19937_64& engine) {
  const int c = spec.n_classes;
  const double floor = 1.0 / c;
  double consensus = mean;
  bool accepted = false;
  for (int attempt = 0; attempt < 1000 && !accepted; ++attempt) {
    consensus = mean + spec.spread * stream.NextGaussian();
    accepted = consensus >= floor && consensus <= 1.0;
  }
  consensus = std::clamp(consensus, floor, 1.0);

  const int64_t n = spec.n_teachers;
  const auto min_top = (n + c - 1) / c;
  const int64_t top_votes = std::clamp<int64_t>(
      std::llround(consensus * static_cast<double>(n)), min_top, n);

  std::vector<int64_t> counts(static_cast<size_t>(c), 0);
  const auto top = static_cast<size_t>(engine() % static_cast<uint64_t>(c));
  counts[top] = top_votes;
  std::vector<size_t> open;
  for (size_t k = 0; k < counts.size(); ++k) {
    if (k != top) open.push_back(k);
  }
  for (int64_t remaining = n - top_votes; remaining > 0; --remaining) {
    const size_t pick = engine() % open.size();
    const size_t k = open[pick];
    if (++counts[k] == top_votes) {
      open[pick] = open.back();
      open.pop_back();
    }
  }
  return VoteHistogram(std::move(counts));
}

}  // namespace

std::vector<LabeledHistogram> GeneratePopulation(
    const SynthPopulationSpec& spec, int64_t size) {
  spec.Validate();
  if (size < 1) throw std::invalid_argument("population size must be >= 1");
  const int64_t minority = std::llround(spec.minority_fraction *
                                        static_cast<double>(size));
  std::vector<LabeledHistogram> out;
  out.reserve(static_cast<size_t>(size));
  for (int64_t i = 0; i < size; ++i) {
    const Group group = i < minority ? Group::kMinority : Group::kMajority;
    const double mean = group == Group::kMinority
                            ? spec.minority_consensus_mean
                            : spec.majority_consensus_mean;
    NoiseStream stream(spec.seed, static_cast<uint64_t>(i));
    std::mt19937_64 engine(SplitMix64(spec.seed + SplitMix64(~uint64_t(i))));
    char id[32];
    std::snprintf(id, sizeof(id), "member-%04lld", static_cast<long long>(i));
    out.push_back({id, DrawMember(spec, mean, stream, engine), group});
  }
  return out;
}

}  // namespace pateleak
