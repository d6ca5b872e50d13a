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

// The 30 reference vote histograms (250 teachers, 10 classes): five each of
// high, medium and low consensus for an MNIST and an SVHN teacher ensemble.
// data/fixtures.csv carries the same table in the histogram file format.

#ifndef PATELEAK_FIXTURES_H_
#define PATELEAK_FIXTURES_H_

#include <string>
#include <string_view>
#include <vector>

#include "pateleak/histogram.h"

namespace pateleak {

struct Fixture {
  std::string_view dataset;  // "mnist" or "svhn"
  ConsensusGroup group;
  int index;                 // 1..5 within (dataset, group)
  VoteHistogram histogram;

  // e.g. "svhn-medium-H3".
  std::string name() const;
};

const std::vector<Fixture>& Fixtures();

std::vector<Fixture> FixturesFor(std::string_view dataset);

// Throws std::out_of_range for an unknown (dataset, group, index).
const Fixture& FindFixture(std::string_view dataset, ConsensusGroup group,
                           int index);

}  // namespace pateleak

#endif  // PATELEAK_FIXTURES_H_
