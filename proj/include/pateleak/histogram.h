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

// Histogram value types shared by every pateleak module, and the metrics the
// attack is scored with.

#ifndef PATELEAK_HISTOGRAM_H_
#define PATELEAK_HISTOGRAM_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace pateleak {

// Integer teacher-vote counts for one query. Always holds at least two
// classes, no negative entries and a positive total.
class VoteHistogram {
 public:
  // Throws std::invalid_argument when the invariants do not hold.
  explicit VoteHistogram(std::vector<int64_t> counts);

  std::span<const int64_t> counts() const { return counts_; }
  int64_t operator[](size_t k) const { return counts_[k]; }
  size_t num_classes() const { return counts_.size(); }
  // Number of teachers N.
  int64_t total() const { return total_; }

  std::vector<double> as_real() const;

  friend bool operator==(const VoteHistogram&, const VoteHistogram&) = default;

 private:
  std::vector<int64_t> counts_;
  int64_t total_ = 0;
};

// Real-valued vote-count estimate. Entries may be negative while the
// reconstruction is still running.
using RealHistogram = std::vector<double>;

enum class ConsensusGroup { kLow, kMedium, kHigh };

std::string_view ToString(ConsensusGroup group);

// max(counts) / N, in (0, 1].
double Consensus(const VoteHistogram& h);

// sum |truth_i - estimate_i| / (2 sum |truth_i|): the fraction of votes the
// estimate puts in the wrong bin.
double L1Error(const VoteHistogram& truth, std::span<const double> estimate);

// Adds (n - sum(estimate)) / c to every entry so the result sums to n.
RealHistogram ShiftToTotal(std::span<const double> estimate, int64_t n);

// Splits a collection into three consensus groups at the 1/3 and 2/3
// quantiles (linear interpolation between order statistics). A value equal
// to a boundary belongs to the lower group. Output is aligned with input.
std::vector<ConsensusGroup> TertileSplit(std::span<const VoteHistogram> hists);

}  // namespace pateleak

#endif  // PATELEAK_HISTOGRAM_H_
