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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "oracles.h"
#include "pateleak/attribute.h"
#include "pateleak/cli.h"
#include "pateleak/fixtures.h"
#include "pateleak/histogram.h"
#include "pateleak/histogram_io.h"
#include "pateleak/mechanism.h"
#include "pateleak/outcome_model.h"
#include "pateleak/privacy.h"
#include "pateleak/reconstruct.h"

namespace pateleak {
namespace {

using ::pateleak::testing::ContinuousEpsilon;
using ::pateleak::testing::RandomHistogram;
using ::pateleak::testing::TwoClassWinProbability;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

std::vector<double> RandomRealHistogram(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> classes(2, 10);
  const auto counts = RandomHistogram(rng, classes(rng), 250);
  return std::vector<double>(counts.begin(), counts.end());
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double SampledError(const VoteHistogram& h, double sigma, int64_t m,
                    uint64_t seed) {
  const QuerySample s = Sample(h, {sigma, seed}, m);
  return *Reconstruct(EstimateDistribution(s), sigma, h).error;
}

Outcome Normalization() {
  const auto start = Clock::now();
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto h = RandomRealHistogram(rng);
    for (double sigma : {40.0, 60.0, 80.0, 100.0}) {
      const auto d = ComputeOutcomeDistribution(h, sigma);
      worst = std::max(worst, std::fabs(d.raw_mass - 1.0));
    }
  }
  const double secs = Seconds(start);
  return {worst <= 1e-6 && secs <= 60.0,
          Fmt("max |sum Q - 1| = %.3g (<= 1e-6), %.1f s (<= 60 s)", worst,
              secs)};
}

Outcome ShiftInvariance() {
  const auto start = Clock::now();
  std::mt19937_64 rng(202);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto h = RandomRealHistogram(rng);
    const auto base = ComputeOutcomeDistribution(h, 40.0).probs;
    for (double d : {-100.0, 1.0, 250.0}) {
      std::vector<double> shifted = h;
      for (double& v : shifted) v += d;
      const auto q = ComputeOutcomeDistribution(shifted, 40.0).probs;
      for (size_t k = 0; k < q.size(); ++k) {
        worst = std::max(worst, std::fabs(q[k] - base[k]));
      }
    }
  }
  const double secs = Seconds(start);
  return {worst <= 1e-9 && secs <= 60.0,
          Fmt("max |Q(H) - Q(H + d)| = %.3g (<= 1e-9), %.1f s (<= 60 s)",
              worst, secs)};
}

Outcome TwoClassOracle() {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> votes(0.0, 250.0);
  std::uniform_real_distribution<double> noise(1.0, 200.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double h0 = votes(rng), h1 = votes(rng), sigma = noise(rng);
    const std::vector<double> h = {h0, h1};
    const double q0 = ComputeOutcomeDistribution(h, sigma).probs[0];
    worst = std::max(worst,
                     std::fabs(q0 - TwoClassWinProbability(h0, h1, sigma)));
  }
  return {worst <= 1e-4, Fmt("max |Q0 - Phi| = %.3g (<= 1e-4)", worst)};
}

Outcome MechanismVsModel() {
  const auto start = Clock::now();
  constexpr int64_t kM = 1'000'000;
  const std::vector<const Fixture*> chosen = {
      &FindFixture("mnist", ConsensusGroup::kLow, 1),
      &FindFixture("mnist", ConsensusGroup::kMedium, 4),
      &FindFixture("svhn", ConsensusGroup::kLow, 5),
      &FindFixture("svhn", ConsensusGroup::kMedium, 3),
      &FindFixture("svhn", ConsensusGroup::kHigh, 2)};
  double worst_ratio = 0.0;
  for (size_t f = 0; f < chosen.size(); ++f) {
    const VoteHistogram& h = chosen[f]->histogram;
    const auto q = ComputeOutcomeDistribution(h.as_real(), 40.0).probs;
    const QuerySample s = Sample(h, {40.0, 4000 + f}, kM);
    for (size_t k = 0; k < q.size(); ++k) {
      const double freq = static_cast<double>(s.counts[k]) / kM;
      const double bound = 4.0 * std::sqrt(q[k] * (1.0 - q[k]) / kM) + 1e-4;
      worst_ratio = std::max(worst_ratio, std::fabs(freq - q[k]) / bound);
    }
  }
  const double secs = Seconds(start);
  return {worst_ratio <= 1.0 && secs <= 120.0,
          Fmt("max deviation = %.3f of bound (<= 1), %.1f s (<= 120 s)",
              worst_ratio, secs)};
}

Outcome Gradient() {
  std::mt19937_64 rng(505);
  constexpr double kStep = 1e-3;
  double worst = 0.0;
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    const auto h = RandomRealHistogram(rng);
    const auto jac = ComputeOutcomeJacobian(h, 40.0);
    for (size_t j = 0; j < h.size(); ++j) {
      std::vector<double> up = h, down = h;
      up[j] += kStep;
      down[j] -= kStep;
      const auto qu = ComputeOutcomeDistribution(up, 40.0, {}, h).probs;
      const auto qd = ComputeOutcomeDistribution(down, 40.0, {}, h).probs;
      for (size_t k = 0; k < h.size(); ++k) {
        if (std::fabs(jac(k, j)) <= 1e-8) continue;
        const double fd = (qu[k] - qd[k]) / (2 * kStep);
        worst = std::max(worst, std::fabs(fd - jac(k, j)) / std::fabs(jac(k, j)));
        ++checked;
      }
    }
  }
  return {worst <= 1e-4 && checked > 0,
          Fmt("max relative error = %.3g over %d entries (<= 1e-4)", worst,
              checked)};
}

Outcome NoiselessInversion() {
  double worst = 0.0;
  std::string worst_name;
  for (const Fixture& f : Fixtures()) {
    MonteCarloEstimate est;
    est.q_bar = ComputeOutcomeDistribution(f.histogram.as_real(), 40.0).probs;
    est.std_err.assign(est.q_bar.size(), 0.0);
    const double err = *Reconstruct(est, 40.0, f.histogram).error;
    if (err > worst) {
      worst = err;
      worst_name = f.name();
    }
  }
  return {worst <= 0.03, Fmt("max error over 30 fixtures = %.4f at %s (<= 0.03)",
                             worst, worst_name.c_str())};
}

Outcome DeskScaleReproduction() {
  constexpr int64_t kM = 10'000;
  double sum[2] = {0, 0};
  int count[2] = {0, 0};
  double slowest = 0.0;
  for (const Fixture& f : Fixtures()) {
    const int d = f.dataset == "mnist" ? 0 : 1;
    const auto start = Clock::now();
    for (uint64_t seed = 0; seed < 3; ++seed) {
      sum[d] += SampledError(f.histogram, 40.0, kM, 7000 + seed);
      ++count[d];
    }
    slowest = std::max(slowest, Seconds(start) / 3.0);
  }
  const double mnist = sum[0] / count[0], svhn = sum[1] / count[1];
  return {mnist <= 0.16 && svhn <= 0.10 && slowest <= 1800.0,
          Fmt("mean error MNIST %.4f (<= 0.16), SVHN %.4f (<= 0.10); "
              "slowest histogram %.2f s (<= 1800 s)",
              mnist, svhn, slowest)};
}

Outcome NoiseTrend() {
  const VoteHistogram& h =
      FindFixture("svhn", ConsensusGroup::kMedium, 3).histogram;
  const std::vector<double> sigmas = {0.1, 40.0, 100.0, 400.0};
  std::vector<double> medians;
  for (double sigma : sigmas) {
    std::vector<double> errors;
    for (uint64_t seed = 0; seed < 5; ++seed) {
      errors.push_back(SampledError(h, sigma, 10'000, 8000 + seed));
    }
    medians.push_back(Median(errors));
  }
  const bool trend = medians[2] < medians[1];
  const bool edge = medians[0] >= *std::max_element(medians.begin() + 1,
                                                     medians.end());
  return {trend && edge,
          Fmt("median error at sigma 0.1/40/100/400 = %.4f/%.4f/%.4f/%.4f; "
              "100 < 40: %s, 0.1 is max: %s",
              medians[0], medians[1], medians[2], medians[3],
              trend ? "yes" : "no", edge ? "yes" : "no")};
}

Outcome Accountant() {
  PrivacyParams params;
  params.sigma = 40.0;
  params.delta = 1e-5;
  const double grid = Account(params, 10'000).epsilon;
  const double oracle = ContinuousEpsilon(10'000, 40.0, 1e-5);
  const double rel = std::fabs(grid - oracle) / oracle;

  bool monotone = true;
  const std::vector<int64_t> ms = {1, 100, 10'000};
  const std::vector<double> sigmas = {40.0, 60.0, 80.0, 100.0};
  auto eps = [](int64_t m, double sigma) {
    PrivacyParams p;
    p.sigma = sigma;
    return Account(p, m).epsilon;
  };
  for (double s : sigmas) {
    for (size_t i = 1; i < ms.size(); ++i) {
      monotone = monotone && eps(ms[i - 1], s) <= eps(ms[i], s);
    }
  }
  for (int64_t m : ms) {
    for (size_t i = 1; i < sigmas.size(); ++i) {
      monotone = monotone && eps(m, sigmas[i - 1]) >= eps(m, sigmas[i]);
    }
  }

  // Budget-gated simulate through the CLI.
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pateleak_acceptance";
  fs::create_directories(dir);
  const std::string input = (dir / "h.txt").string();
  const std::string output = (dir / "samples.csv").string();
  std::ofstream(input) << FormatHistogramLine(
                              FindFixture("mnist", ConsensusGroup::kHigh, 1)
                                  .histogram)
                       << '\n';
  cli::SimulateOptions sim;
  sim.input = input;
  sim.output = output;
  sim.sigma = 40.0;
  sim.limit.budget = 1.97;
  sim.limit.delta = 1e-5;
  sim.seed = 9;
  int64_t issued = -1;
  if (cli::Simulate(sim) == cli::kExitOk) {
    issued = ReadSampleFile(output).at(0).m();
  }
  fs::remove_all(dir);
  const int64_t limit = MaxQueriesWithinBudget(params, 1.97);

  return {rel <= 0.01 && monotone && issued == limit,
          Fmt("eps grid %.4f vs continuous %.4f (rel %.2g <= 0.01); "
              "monotone: %s; budget 1.97 issued %lld of %lld",
              grid, oracle, rel, monotone ? "yes" : "no",
              static_cast<long long>(issued), static_cast<long long>(limit))};
}

Outcome AttributeEndToEnd() {
  SynthPopulationSpec spec{250, 10, 0.5, 0.95, 0.5, 0.03, 1010};
  const auto population = GeneratePopulation(spec, 20);
  double min_gap = 1.0;
  int agree = 0;
  std::vector<Prediction> recovered;
  for (size_t i = 0; i < population.size(); ++i) {
    const auto& member = population[i];
    min_gap = std::min(
        min_gap, std::fabs(Consensus(member.histogram) -
                           kDefaultConsensusThreshold));
    const QuerySample s = Sample(member.histogram, {40.0, 9000 + i}, 10'000);
    const auto r = Reconstruct(EstimateDistribution(s), 40.0, member.histogram);
    const Group from_truth = ClassifyByConsensus(member.histogram);
    const Group from_recon = ClassifyByConsensus(r.estimate);
    agree += from_truth == from_recon;
    recovered.push_back({member.id, from_recon});
  }
  const double agreement = agree / 20.0;
  const AttributeMetrics pipeline = Evaluate(recovered, population);

  // Larger well-separated populations on true histograms.
  double worst_precision = 1.0;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    SynthPopulationSpec sep{250, 10, 0.5, 0.9, 0.55, 0.05, 500 + seed};
    const auto pop = GeneratePopulation(sep, 1000);
    std::vector<Prediction> preds;
    for (const auto& m : pop) {
      preds.push_back({m.id, ClassifyByConsensus(m.histogram)});
    }
    const AttributeMetrics m = Evaluate(preds, pop);
    worst_precision =
        std::min(worst_precision, m.precision_defined ? m.precision : 0.0);
  }

  const bool pass = min_gap >= 0.15 && agreement >= 0.9 &&
                    pipeline.precision_defined && pipeline.precision >= 0.9 &&
                    worst_precision >= 0.9;
  return {pass,
          Fmt("20-member gap %.3f (>= 0.15), agreement %.2f (>= 0.90), "
              "pipeline precision %.2f; separated-population precision "
              "min %.3f (>= 0.9)",
              min_gap, agreement, pipeline.precision, worst_precision)};
}

}  // namespace
}  // namespace pateleak

int main() {
  using namespace pateleak;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria =
      {{"normalization", Normalization},
       {"shift invariance", ShiftInvariance},
       {"two-class oracle", TwoClassOracle},
       {"mechanism vs model", MechanismVsModel},
       {"gradient", Gradient},
       {"noiseless inversion", NoiselessInversion},
       {"desk-scale reproduction", DeskScaleReproduction},
       {"noise trend", NoiseTrend},
       {"accountant", Accountant},
       {"attribute end-to-end", AttributeEndToEnd}};
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
