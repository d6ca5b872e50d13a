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

#include "pateleak/mechanism.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "oracles.h"
#include "pateleak/fixtures.h"
#include "pateleak/outcome_model.h"

namespace pateleak {
namespace {

using ::pateleak::testing::TwoClassWinProbability;

double Frequency(const QuerySample& s, size_t k) {
  return static_cast<double>(s.counts[k]) / static_cast<double>(s.m());
}

TEST(NoiseStreamTest, StandardNormalMoments) {
  NoiseStream stream(1, 0);
  constexpr int kDraws = 400000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double z = stream.NextGaussian();
    sum += z;
    sum_sq += z * z;
  }
  EXPECT_NEAR(sum / kDraws, 0.0, 5.0 / std::sqrt(kDraws));
  EXPECT_NEAR(sum_sq / kDraws, 1.0, 5.0 * std::sqrt(2.0 / kDraws));
}

TEST(NoiseStreamTest, StreamsDiffer) {
  NoiseStream a(1, 0), b(1, 1), c(2, 0);
  const double za = a.NextGaussian();
  EXPECT_NE(za, b.NextGaussian());
  EXPECT_NE(za, c.NextGaussian());
  NoiseStream again(1, 0);
  EXPECT_EQ(za, again.NextGaussian());
}

TEST(AggregateTest, NoiselessReturnsArgmax) {
  NoiseStream stream(0, 0);
  EXPECT_EQ(Aggregate(VoteHistogram({3, 9, 1}), 0.0, stream), 1u);
  EXPECT_EQ(Aggregate(VoteHistogram({5, 5, 1}), 0.0, stream), 0u);
}

TEST(SampleTest, NoiselessAlwaysArgmax) {
  NoiseSpec noise{0.0, 4, true};
  const auto& h = FindFixture("mnist", ConsensusGroup::kHigh, 1).histogram;
  const QuerySample s = Sample(h, noise, 1000);
  EXPECT_EQ(s.counts[7], 1000);
}

TEST(SampleTest, TwoClassFrequencyMatchesClosedForm) {
  constexpr int64_t kM = 200000;
  const QuerySample s = Sample(VoteHistogram({250, 0}), {40.0, 9}, kM);
  const double p = TwoClassWinProbability(250, 0, 40.0);
  EXPECT_NEAR(Frequency(s, 0), p, 4.0 * std::sqrt(p * (1 - p) / kM) + 1e-6);
}

TEST(SampleTest, TiedClassesSplitEvenly) {
  const QuerySample s = Sample(VoteHistogram({100, 100}), {40.0, 3}, 200000);
  EXPECT_NEAR(Frequency(s, 0), 0.5, 0.005);
}

TEST(SampleTest, DeterministicGivenSeedAndWorkers) {
  const auto& h = FindFixture("svhn", ConsensusGroup::kLow, 1).histogram;
  const QuerySample a = Sample(h, {40.0, 77}, 5000, 3);
  const QuerySample b = Sample(h, {40.0, 77}, 5000, 3);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.counts, b.counts);
  const QuerySample other = Sample(h, {40.0, 78}, 5000, 3);
  EXPECT_NE(a.labels, other.labels);
}

TEST(SampleTest, SingleQueryIsOneHot) {
  const QuerySample s =
      Sample(FindFixture("svhn", ConsensusGroup::kLow, 4).histogram,
             {40.0, 1}, 1);
  ASSERT_EQ(s.m(), 1);
  EXPECT_EQ(std::accumulate(s.counts.begin(), s.counts.end(), int64_t{0}), 1);
  EXPECT_EQ(s.counts[s.labels[0]], 1);
}

TEST(SampleTest, CountsAreTallyOfLabels) {
  const QuerySample s =
      Sample(FindFixture("mnist", ConsensusGroup::kLow, 2).histogram,
             {40.0, 5}, 3000, 4);
  std::vector<int64_t> tally(s.counts.size(), 0);
  for (uint32_t l : s.labels) ++tally[l];
  EXPECT_EQ(tally, s.counts);
}

TEST(SampleTest, FrequenciesWithinSamplingErrorOfModel) {
  const auto& h = FindFixture("svhn", ConsensusGroup::kLow, 5).histogram;
  constexpr int64_t kM = 10000;
  const auto q = ComputeOutcomeDistribution(h.as_real(), 40.0).probs;
  const QuerySample s = Sample(h, {40.0, 12}, kM);
  for (size_t k = 0; k < q.size(); ++k) {
    EXPECT_NEAR(Frequency(s, k), q[k], 5.0 / std::sqrt(kM)) << k;
  }
}

TEST(SampleTest, LargeSampleConsistency) {
  const auto& h = FindFixture("mnist", ConsensusGroup::kMedium, 4).histogram;
  constexpr int64_t kM = 1000000;
  const auto q = ComputeOutcomeDistribution(h.as_real(), 40.0).probs;
  const QuerySample s = Sample(h, {40.0, 21}, kM, 2);
  for (size_t k = 0; k < q.size(); ++k) {
    EXPECT_NEAR(Frequency(s, k), q[k],
                4.0 * std::sqrt(q[k] * (1 - q[k]) / kM) + 1e-4)
        << k;
  }
}

TEST(SampleTest, PermutationEquivariantInDistribution) {
  const VoteHistogram h({120, 80, 50});
  const VoteHistogram permuted({50, 120, 80});
  constexpr int64_t kM = 200000;
  const QuerySample a = Sample(h, {40.0, 1}, kM);
  const QuerySample b = Sample(permuted, {40.0, 2}, kM);
  const double tol = 4.0 * std::sqrt(0.25 / kM) * std::sqrt(2.0);
  EXPECT_NEAR(Frequency(a, 0), Frequency(b, 1), tol);
  EXPECT_NEAR(Frequency(a, 1), Frequency(b, 2), tol);
  EXPECT_NEAR(Frequency(a, 2), Frequency(b, 0), tol);
}

TEST(SampleTest, InvalidArgumentsThrow) {
  const VoteHistogram h({1, 2});
  EXPECT_THROW(Sample(h, {40.0, 0}, 0), std::invalid_argument);
  EXPECT_THROW(Sample(h, {40.0, 0}, -3), std::invalid_argument);
  EXPECT_THROW(Sample(h, {0.0, 0}, 10), std::invalid_argument);
  EXPECT_THROW(Sample(h, {-1.0, 0, true}, 10), std::invalid_argument);
  EXPECT_THROW(Sample(h, {40.0, 0}, 10, 0), std::invalid_argument);
}

}  // namespace
}  // namespace pateleak
