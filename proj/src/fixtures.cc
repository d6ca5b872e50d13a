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

#include "pateleak/fixtures.h"

#include <stdexcept>

namespace pateleak {
namespace {

using G = ConsensusGroup;

std::vector<Fixture> BuildFixtures() {
  auto f = [](std::string_view dataset, G group, int index,
              std::vector<int64_t> counts) {
    return Fixture{dataset, group, index, VoteHistogram(std::move(counts))};
  };
  return {
      f("mnist", G::kHigh, 1, {4, 7, 6, 8, 4, 2, 0, 214, 4, 1}),
      f("mnist", G::kHigh, 2, {4, 7, 207, 10, 4, 4, 0, 10, 3, 1}),
      f("mnist", G::kHigh, 3, {5, 205, 7, 8, 4, 3, 0, 11, 6, 1}),
      f("mnist", G::kHigh, 4, {4, 7, 6, 7, 4, 200, 4, 10, 7, 1}),
      f("mnist", G::kHigh, 5, {4, 7, 210, 7, 4, 4, 0, 10, 3, 1}),
      f("mnist", G::kMedium, 1, {5, 183, 9, 16, 4, 3, 1, 10, 17, 2}),
      f("mnist", G::kMedium, 2, {6, 7, 6, 30, 4, 181, 0, 10, 5, 1}),
      f("mnist", G::kMedium, 3, {4, 7, 6, 10, 13, 4, 0, 17, 3, 186}),
      f("mnist", G::kMedium, 4, {6, 18, 184, 7, 10, 4, 7, 10, 3, 1}),
      f("mnist", G::kMedium, 5, {7, 7, 8, 7, 4, 9, 193, 10, 4, 1}),
      f("mnist", G::kLow, 1, {12, 7, 6, 30, 4, 161, 0, 10, 19, 1}),
      f("mnist", G::kLow, 2, {4, 8, 7, 11, 38, 16, 1, 13, 8, 144}),
      f("mnist", G::kLow, 3, {4, 7, 15, 33, 6, 5, 0, 171, 5, 4}),
      f("mnist", G::kLow, 4, {4, 7, 117, 99, 4, 4, 0, 10, 4, 1}),
      f("mnist", G::kLow, 5, {4, 17, 6, 11, 154, 4, 0, 11, 5, 38}),
      f("svhn", G::kHigh, 1, {0, 0, 0, 0, 250, 0, 0, 0, 0, 0}),
      f("svhn", G::kHigh, 2, {0, 0, 250, 0, 0, 0, 0, 0, 0, 0}),
      f("svhn", G::kHigh, 3, {0, 0, 0, 250, 0, 0, 0, 0, 0, 0}),
      f("svhn", G::kHigh, 4, {0, 250, 0, 0, 0, 0, 0, 0, 0, 0}),
      f("svhn", G::kHigh, 5, {0, 0, 0, 0, 0, 0, 250, 0, 0, 0}),
      f("svhn", G::kMedium, 1, {0, 0, 1, 0, 249, 0, 0, 0, 0, 0}),
      f("svhn", G::kMedium, 2, {0, 10, 1, 232, 1, 3, 0, 1, 0, 2}),
      f("svhn", G::kMedium, 3, {0, 0, 0, 6, 0, 243, 0, 0, 0, 1}),
      f("svhn", G::kMedium, 4, {236, 0, 0, 7, 0, 0, 6, 0, 1, 0}),
      f("svhn", G::kMedium, 5, {234, 2, 0, 4, 0, 0, 0, 1, 9, 0}),
      f("svhn", G::kLow, 1, {1, 1, 20, 12, 0, 0, 2, 207, 7, 0}),
      f("svhn", G::kLow, 2, {0, 158, 1, 6, 4, 38, 0, 40, 1, 2}),
      f("svhn", G::kLow, 3, {0, 184, 0, 2, 3, 0, 0, 61, 0, 0}),
      f("svhn", G::kLow, 4, {0, 0, 24, 0, 0, 0, 0, 0, 0, 226}),
      f("svhn", G::kLow, 5, {10, 1, 2, 19, 7, 109, 73, 0, 19, 10}),
  };
}

}  // namespace

std::string Fixture::name() const {
  return std::string(dataset) + "-" + std::string(ToString(group)) + "-H" +
         std::to_string(index);
}

const std::vector<Fixture>& Fixtures() {
  static const std::vector<Fixture> kFixtures = BuildFixtures();
  return kFixtures;
}

std::vector<Fixture> FixturesFor(std::string_view dataset) {
  std::vector<Fixture> out;
  for (const auto& f : Fixtures()) {
    if (f.dataset == dataset) out.push_back(f);
  }
  return out;
}

const Fixture& FindFixture(std::string_view dataset, ConsensusGroup group,
                           int index) {
  for (const auto& f : Fixtures()) {
    if (f.dataset == dataset && f.group == group && f.index == index) return f;
  }
  throw std::out_of_range("no such fixture");
}

}  // namespace pateleak
