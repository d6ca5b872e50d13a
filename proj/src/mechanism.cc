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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace pateleak {

void NoiseSpec::Validate() const {
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw std::invalid_argument("sigma must be finite and non-negative");
  }
  if (sigma == 0.0 && !allow_noiseless) {
    throw std::invalid_argument("sigma = 0 requires noiseless mode");
  }
}

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

NoiseStream::NoiseStream(uint64_t seed, uint64_t stream_id)
    : engine_(SplitMix64(seed ^ SplitMix64(stream_id))) {}

double NoiseStream::NextUniform() {
  // (0, 1]: never zero, so the logarithm below stays finite.
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double NoiseStream::NextGaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(NextUniform()));
  const double angle = 2.0 * std::numbers::pi * NextUniform();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

size_t Aggregate(const VoteHistogram& h, double sigma, NoiseStream& stream) {
  const auto counts = h.counts();
  size_t best = 0;
  double best_score = -INFINITY;
  for (size_t i = 0; i < counts.size(); ++i) {
    double score = static_cast<double>(counts[i]);
    if (sigma > 0.0) score += sigma * stream.NextGaussian();
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return best;
}

QuerySample Sample(const VoteHistogram& h, const NoiseSpec& noise, int64_t m,
                   int workers) {
  noise.Validate();
  if (m <= 0) throw std::invalid_argument("query count must be positive");
  if (workers < 1) throw std::invalid_argument("need at least one worker");

  QuerySample out;
  out.labels.resize(static_cast<size_t>(m));
  const int64_t chunk = (m + workers - 1) / workers;
  auto run = [&](int w) {
    NoiseStream stream(noise.seed, static_cast<uint64_t>(w));
    const int64_t begin = std::min(m, w * chunk);
    const int64_t end = std::min(m, begin + chunk);
    for (int64_t i = begin; i < end; ++i) {
      out.labels[static_cast<size_t>(i)] =
          static_cast<uint32_t>(Aggregate(h, noise.sigma, stream));
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  out.counts.assign(h.num_classes(), 0);
  for (uint32_t label : out.labels) ++out.counts[label];
  return out;
}

}  // namespace pateleak
