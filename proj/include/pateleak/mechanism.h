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

// The aggregation mechanism under attack: Gaussian noisy argmax over a vote
// histogram, and repeated querying of it with replayable randomness.
//
// Randomness: each stream is a std::mt19937_64 seeded with
// SplitMix64(seed ^ SplitMix64(stream_id)); standard normals come from the
// Box-Muller transform of two 53-bit uniforms. Both algorithms are fully
// specified, so a given (seed, stream) yields the same draws on every
// standard library.

#ifndef PATELEAK_MECHANISM_H_
#define PATELEAK_MECHANISM_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "pateleak/histogram.h"

namespace pateleak {

struct NoiseSpec {
  double sigma = 40.0;
  uint64_t seed = 0;
  // sigma == 0 is rejected unless this is set.
  bool allow_noiseless = false;

  void Validate() const;
};

uint64_t SplitMix64(uint64_t x);

class NoiseStream {
 public:
  NoiseStream(uint64_t seed, uint64_t stream_id);

  double NextGaussian();

 private:
  double NextUniform();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// argmax_i (h_i + N(0, sigma^2)). With sigma == 0 the lowest-index maximum
// wins.
size_t Aggregate(const VoteHistogram& h, double sigma, NoiseStream& stream);

struct QuerySample {
  std::vector<uint32_t> labels;
  std::vector<int64_t> counts;

  int64_t m() const { return static_cast<int64_t>(labels.size()); }
};

// m independent Aggregate() answers. Draws are split into `workers`
// contiguous chunks, chunk w using stream w; the label sequence depends only
// on (h, noise, m, workers).
QuerySample Sample(const VoteHistogram& h, const NoiseSpec& noise, int64_t m,
                   int workers = 1);

}  // namespace pateleak

#endif  // PATELEAK_MECHANISM_H_
