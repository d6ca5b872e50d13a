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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pateleak/attribute.h"
#include "pateleak/fixtures.h"
#include "pateleak/histogram.h"
#include "pateleak/mechanism.h"
#include "pateleak/outcome_model.h"
#include "pateleak/privacy.h"
#include "pateleak/reconstruct.h"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace pybind11::literals;

namespace pateleak {
namespace {

IntegrationGrid MakeGrid(double half_width, double step) {
  IntegrationGrid grid;
  grid.half_width_sigmas = half_width;
  grid.step = step;
  return grid;
}

std::vector<std::vector<double>> JacobianRows(const OutcomeJacobian& jac) {
  std::vector<std::vector<double>> rows(jac.num_classes);
  for (size_t k = 0; k < jac.num_classes; ++k) {
    for (size_t j = 0; j < jac.num_classes; ++j) rows[k].push_back(jac(k, j));
  }
  return rows;
}

std::tuple<double, double> EpsilonFor(int64_t m, double sigma, double delta) {
  PrivacyParams params;
  params.sigma = sigma;
  params.delta = delta;
  const PrivacyAccount account = Account(params, m);
  return {account.epsilon, account.alpha_star};
}

}  // namespace
}  // namespace pateleak

PYBIND11_MODULE(_core, m) {
  using namespace pateleak;
  m.doc() = "Histogram reconstruction attack on PATE's noisy argmax";

  py::enum_<StopMode>(m, "StopMode")
      .value("LOSS_THRESHOLD", StopMode::kLossThreshold)
      .value("NEGATIVE_ENTRY", StopMode::kNegativeEntry)
      .value("BOTH", StopMode::kBoth);
  py::enum_<InitMode>(m, "InitMode")
      .value("ZEROS", InitMode::kZeros)
      .value("UNIFORM_N", InitMode::kUniformN);
  py::enum_<StopReason>(m, "StopReason")
      .value("LOSS_THRESHOLD", StopReason::kLossThreshold)
      .value("NEGATIVE_ENTRY", StopReason::kNegativeEntry)
      .value("STALLED", StopReason::kStalled)
      .value("FLAT_GRADIENT", StopReason::kFlatGradient)
      .value("MAX_ITERATIONS", StopReason::kMaxIterations);

  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_readwrite("loss_threshold", &OptimizerConfig::loss_threshold)
      .def_readwrite("lr_numerator_initial",
                     &OptimizerConfig::lr_numerator_initial)
      .def_readwrite("lr_numerator_final", &OptimizerConfig::lr_numerator_final)
      .def_readwrite("lr_switch_loss", &OptimizerConfig::lr_switch_loss)
      .def_readwrite("max_iters", &OptimizerConfig::max_iters)
      .def_readwrite("stop_mode", &OptimizerConfig::stop_mode)
      .def_readwrite("init", &OptimizerConfig::init);

  py::class_<ReconstructionResult>(m, "ReconstructionResult")
      .def_readonly("estimate", &ReconstructionResult::estimate)
      .def_readonly("raw_estimate", &ReconstructionResult::raw_estimate)
      .def_readonly("final_loss", &ReconstructionResult::final_loss)
      .def_readonly("iterations", &ReconstructionResult::iterations)
      .def_readonly("stop_reason", &ReconstructionResult::stop_reason)
      .def_readonly("error", &ReconstructionResult::error)
      .def_property_readonly("loss_trace", [](const ReconstructionResult& r) {
        std::vector<double> losses;
        for (const auto& p : r.loss_trace) losses.push_back(p.loss);
        return losses;
      });

  m.def(
      "consensus",
      [](std::vector<int64_t> h) { return Consensus(VoteHistogram(h)); },
      "max(h) / sum(h)", "h"_a);
  m.def(
      "l1_error",
      [](std::vector<int64_t> truth, std::vector<double> estimate) {
        return L1Error(VoteHistogram(truth), estimate);
      },
      "Normalized L1 distance between a histogram and an estimate", "truth"_a,
      "estimate"_a);
  m.def(
      "shift_to_total",
      [](std::vector<double> estimate, int64_t n) {
        return ShiftToTotal(estimate, n);
      },
      "estimate"_a, "n"_a);
  m.def(
      "tertile_split",
      [](std::vector<std::vector<int64_t>> hists) {
        std::vector<VoteHistogram> parsed;
        for (auto& h : hists) parsed.emplace_back(std::move(h));
        std::vector<std::string> out;
        for (ConsensusGroup g : TertileSplit(parsed)) {
          out.emplace_back(ToString(g));
        }
        return out;
      },
      "hists"_a);

  m.def("gaussian_cdf", &GaussianCdf, "x"_a);
  m.def("gaussian_pdf", &GaussianPdf, "x"_a);
  m.def(
      "outcome_distribution",
      [](std::vector<double> h, double sigma, double half_width, double step) {
        return ComputeOutcomeDistribution(h, sigma, MakeGrid(half_width, step))
            .probs;
      },
      "Probability that the noisy argmax returns each class", "h"_a,
      "sigma"_a, "half_width"_a = 6.0, "step"_a = 1.0);
  m.def(
      "outcome_jacobian",
      [](std::vector<double> h, double sigma, double half_width, double step) {
        return JacobianRows(
            ComputeOutcomeJacobian(h, sigma, MakeGrid(half_width, step)));
      },
      "Rows k, columns j: dQ_k/dH_j", "h"_a, "sigma"_a, "half_width"_a = 6.0,
      "step"_a = 1.0);

  m.def(
      "sample",
      [](std::vector<int64_t> h, double sigma, int64_t queries, uint64_t seed,
         int workers) {
        NoiseSpec noise;
        noise.sigma = sigma;
        noise.seed = seed;
        noise.allow_noiseless = sigma == 0.0;
        py::gil_scoped_release release;
        return Sample(VoteHistogram(h), noise, queries, workers).counts;
      },
      "Answer counts of `m` noisy-argmax queries", "h"_a, "sigma"_a, "m"_a,
      "seed"_a = 0, "workers"_a = 1);
  m.def(
      "estimate_distribution",
      [](std::vector<int64_t> counts) {
        const MonteCarloEstimate est = EstimateDistribution(counts);
        return std::make_tuple(est.q_bar, est.std_err);
      },
      "(q_bar, std_err) from answer counts", "counts"_a);
  m.def(
      "loss",
      [](std::vector<double> estimate, std::vector<double> q_bar,
         double sigma) {
        const LossAndGradient l = Loss(estimate, q_bar, sigma);
        return std::make_tuple(l.value, l.gradient);
      },
      "estimate"_a, "q_bar"_a, "sigma"_a);
  m.def(
      "reconstruct",
      [](std::vector<int64_t> counts, double sigma, int64_t n,
         const OptimizerConfig& config,
         std::optional<std::vector<int64_t>> truth) {
        const MonteCarloEstimate est = EstimateDistribution(counts);
        py::gil_scoped_release release;
        if (truth) return Reconstruct(est, sigma, VoteHistogram(*truth), config);
        return Reconstruct(est, sigma, n, config);
      },
      "Recover a histogram from answer counts", "counts"_a, "sigma"_a, "n"_a,
      "config"_a = OptimizerConfig(), "truth"_a = py::none());

  m.def("rdp_per_query", &RdpPerQuery, "sigma"_a, "alpha"_a);
  m.def("epsilon", &EpsilonFor, "(epsilon, alpha_star) after m answers",
        "m"_a, "sigma"_a, "delta"_a = 1e-5);
  m.def(
      "max_queries_within_budget",
      [](double sigma, double delta, double budget) {
        PrivacyParams params;
        params.sigma = sigma;
        params.delta = delta;
        return MaxQueriesWithinBudget(params, budget);
      },
      "sigma"_a, "delta"_a, "budget"_a);

  m.def(
      "classify_by_consensus",
      [](std::vector<double> h, double tau) {
        return std::string(ToString(ClassifyByConsensus(h, tau)));
      },
      "'majority' if consensus > tau, else 'minority'", "h"_a,
      "tau"_a = kDefaultConsensusThreshold);
  m.def(
      "generate_population",
      [](int64_t size, int64_t n_teachers, int n_classes,
         double minority_fraction, double majority_consensus,
         double minority_consensus, double spread, uint64_t seed) {
        SynthPopulationSpec spec{n_teachers,         n_classes,
                                 minority_fraction,  majority_consensus,
                                 minority_consensus, spread,
                                 seed};
        py::list out;
        for (const auto& member : GeneratePopulation(spec, size)) {
          const auto counts = member.histogram.counts();
          out.append(py::make_tuple(
              member.id, std::vector<int64_t>(counts.begin(), counts.end()),
              std::string(ToString(member.group))));
        }
        return out;
      },
      "size"_a, "n_teachers"_a = 250, "n_classes"_a = 10,
      "minority_fraction"_a = 0.5, "majority_consensus"_a = 0.9,
      "minority_consensus"_a = 0.5, "spread"_a = 0.05, "seed"_a = 0);

  m.def("fixtures", [] {
    py::list out;
    for (const auto& f : Fixtures()) {
      const auto counts = f.histogram.counts();
      out.append(py::dict(
          "name"_a = f.name(), "dataset"_a = std::string(f.dataset),
          "group"_a = std::string(ToString(f.group)), "index"_a = f.index,
          "counts"_a = std::vector<int64_t>(counts.begin(), counts.end())));
    }
    return out;
  });

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
