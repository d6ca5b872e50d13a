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

#include "pateleak/cli.h"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "pateleak/histogram_io.h"
#include "pateleak/privacy.h"
#include "pateleak/version.h"

namespace pateleak::cli {
namespace {

namespace fs = std::filesystem;

std::string ResolveOutput(const std::string& requested,
                          const std::string& default_name) {
  if (!requested.empty()) return requested;
  const char* dir = std::getenv("PATELEAK_OUT_DIR");
  return (fs::path(dir != nullptr && *dir != '\0' ? dir : ".") / default_name)
      .string();
}

void WriteFileAtomically(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

std::string VersionLine() {
  return std::string("# pateleak ") + kVersion + "\n";
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. Results must be
// written to per-index slots; the first exception is rethrown.
template <typename Fn>
void ParallelFor(size_t n, int workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    const auto threads = std::min<size_t>(static_cast<size_t>(workers), n);
    for (size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::string JoinEstimate(std::span<const double> values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += FormatDouble(values[i]);
  }
  return out;
}

void CheckWorkers(int workers) {
  if (workers < 1) throw UsageError("--workers must be >= 1");
}

void CheckSigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("sigma must be positive, got " +
                                FormatDouble(sigma));
  }
}

// One reconstruction to run.
struct Job {
  size_t source = 0;
  double sigma = 0.0;
  int rep = 0;
};

struct JobResult {
  int64_t m = 0;
  uint64_t seed = 0;
  PrivacyAccount account;
  ReconstructionResult recon;
};

int RunReconstructions(const ReconstructOptions& options,
                       const std::string& default_name) {
  CheckWorkers(options.workers);
  options.optimizer.Validate();
  const bool from_truth = !options.input.empty();
  if (from_truth == !options.samples.empty()) {
    throw UsageError("give exactly one of --input and --samples");
  }
  if (options.repeats < 1) throw UsageError("--repeats must be >= 1");

  std::vector<VoteHistogram> truths;
  std::vector<ConsensusGroup> groups;
  std::vector<SampleRecord> records;
  std::vector<Job> jobs;
  if (from_truth) {
    if (options.sigmas.empty()) throw UsageError("sigma list is empty");
    for (double s : options.sigmas) CheckSigma(s);
    options.limit.Validate();
    truths = ReadHistogramFile(options.input);
    if (truths.empty()) {
      throw std::invalid_argument(options.input + ": no histograms");
    }
    groups = TertileSplit(truths);
    for (double s : options.sigmas) {
      if (options.limit.QueriesFor(s) < 1) {
        throw std::invalid_argument("budget affords no queries at sigma " +
                                    FormatDouble(s));
      }
    }
    for (size_t i = 0; i < truths.size(); ++i) {
      for (double s : options.sigmas) {
        for (int r = 0; r < options.repeats; ++r) jobs.push_back({i, s, r});
      }
    }
  } else {
    records = ReadSampleFile(options.samples);
    for (size_t i = 0; i < records.size(); ++i) {
      CheckSigma(records[i].sigma);
      jobs.push_back({i, records[i].sigma, 0});
    }
  }

  std::vector<JobResult> results(jobs.size());
  ParallelFor(jobs.size(), options.workers, [&](size_t j) {
    const Job& job = jobs[j];
    JobResult& out = results[j];
    if (from_truth) {
      const VoteHistogram& truth = truths[job.source];
      out.m = options.limit.QueriesFor(job.sigma);
      out.seed = DeriveSeed(options.seed, job.source,
                            static_cast<uint64_t>(job.rep));
      const QuerySample sample = Sample(truth, {job.sigma, out.seed}, out.m);
      out.recon = Reconstruct(EstimateDistribution(sample), job.sigma, truth,
                              options.optimizer);
    } else {
      const SampleRecord& rec = records[job.source];
      out.m = rec.m();
      out.seed = rec.seed;
      out.recon = Reconstruct(EstimateDistribution(rec.counts), rec.sigma,
                              rec.n_teachers, options.optimizer);
    }
    PrivacyParams params;
    params.sigma = job.sigma;
    params.delta = options.limit.delta;
    out.account = Account(params, out.m);
  });

  std::ostringstream csv;
  csv << VersionLine();
  csv << "histogram,group,consensus,sigma,rep,seed,m,epsilon,alpha_star,"
         "error,final_loss,iterations,stop_reason,converged,estimate\n";
  bool all_converged = true;
  for (size_t j = 0; j < jobs.size(); ++j) {
    const Job& job = jobs[j];
    const JobResult& r = results[j];
    const bool converged = Converged(r.recon.stop_reason);
    all_converged = all_converged && converged;
    if (from_truth) {
      csv << job.source << ',' << ToString(groups[job.source]) << ','
          << FormatDouble(Consensus(truths[job.source])) << ',';
    } else {
      csv << records[job.source].histogram << ",,,";
    }
    csv << FormatDouble(job.sigma) << ',' << job.rep << ',' << r.seed << ','
        << r.m << ',' << FormatDouble(r.account.epsilon) << ','
        << FormatDouble(r.account.alpha_star) << ','
        << (r.recon.error ? FormatDouble(*r.recon.error) : "") << ','
        << FormatDouble(r.recon.final_loss) << ',' << r.recon.iterations
        << ',' << ToString(r.recon.stop_reason) << ',' << (converged ? 1 : 0)
        << ',' << JoinEstimate(r.recon.estimate) << '\n';
  }

  if (!options.trace_dir.empty()) {
    for (size_t j = 0; j < jobs.size(); ++j) {
      std::ostringstream trace;
      WriteTrace(trace, results[j].recon.loss_trace);
      const std::string name = "trace_" + std::to_string(jobs[j].source) +
                               "_s" + FormatDouble(jobs[j].sigma) + "_r" +
                               std::to_string(jobs[j].rep) + ".csv";
      WriteFileAtomically((fs::path(options.trace_dir) / name).string(),
                          trace.str());
    }
  }
  WriteFileAtomically(ResolveOutput(options.output, default_name), csv.str());
  return all_converged ? kExitOk : kExitNonConvergence;
}

void AppendMetrics(std::ostringstream& csv, std::string_view source,
                   size_t n, double tau, const AttributeMetrics& m) {
  csv << source << ',' << n << ',' << FormatDouble(tau) << ','
      << m.true_positives << ',' << m.false_positives << ','
      << m.true_negatives << ',' << m.false_negatives << ','
      << FormatDouble(m.precision) << ',' << (m.precision_defined ? 1 : 0)
      << ',' << FormatDouble(m.recall) << ',' << FormatDouble(m.accuracy);
}

constexpr char kMetricsHeader[] =
    "source,n,tau,true_positives,false_positives,true_negatives,"
    "false_negatives,precision,precision_defined,recall,accuracy";

void CheckTau(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("tau must lie in (0, 1)");
  }
}

}  // namespace

void QueryLimit::Validate() const {
  if (m.has_value() == budget.has_value()) {
    throw UsageError("give exactly one of --m and --budget");
  }
  if (m && *m < 1) throw std::invalid_argument("query count must be >= 1");
  if (budget && !(*budget > 0.0)) {
    throw std::invalid_argument("privacy budget must be positive");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
}

int64_t QueryLimit::QueriesFor(double sigma) const {
  if (m) return *m;
  PrivacyParams params;
  params.sigma = sigma;
  params.delta = delta;
  return MaxQueriesWithinBudget(params, *budget);
}

uint64_t DeriveSeed(uint64_t base, uint64_t a, uint64_t b) {
  return SplitMix64(base ^ SplitMix64(a ^ SplitMix64(b + 0x5eed)));
}

int Simulate(const SimulateOptions& options) {
  CheckWorkers(options.workers);
  CheckSigma(options.sigma);
  options.limit.Validate();
  const std::vector<VoteHistogram> hists = ReadHistogramFile(options.input);
  if (hists.empty()) {
    throw std::invalid_argument(options.input + ": no histograms");
  }

  std::vector<SampleRecord> records(hists.size());
  ParallelFor(hists.size(), options.workers, [&](size_t i) {
    SampleRecord& rec = records[i];
    rec.histogram = std::to_string(i);
    rec.sigma = options.sigma;
    rec.seed = DeriveSeed(options.seed, i, 0);
    rec.n_teachers = hists[i].total();
    if (options.limit.m) {
      rec.counts = Sample(hists[i], {options.sigma, rec.seed},
                          *options.limit.m)
                       .counts;
      return;
    }
    // Budget mode: answer one query at a time until the gate closes.
    PrivacyParams params;
    params.sigma = options.sigma;
    params.delta = options.limit.delta;
    BudgetGate gate(params, *options.limit.budget);
    NoiseStream stream(rec.seed, 0);
    rec.counts.assign(hists[i].num_classes(), 0);
    while (gate.TryAnswer()) {
      ++rec.counts[Aggregate(hists[i], options.sigma, stream)];
    }
  });
  for (const auto& rec : records) {
    if (rec.m() < 1) {
      throw std::invalid_argument("budget affords no queries at sigma " +
                                  FormatDouble(options.sigma));
    }
  }

  std::ostringstream out;
  WriteSamples(out, records);
  WriteFileAtomically(ResolveOutput(options.output, "samples.csv"), out.str());
  return kExitOk;
}

int ReconstructCommand(const ReconstructOptions& options) {
  return RunReconstructions(options, "reconstruct.csv");
}

int Sweep(const ReconstructOptions& options) {
  if (options.sigmas.empty()) throw UsageError("sweep needs a sigma list");
  if (options.input.empty()) throw UsageError("sweep needs --input");
  return RunReconstructions(options, "sweep.csv");
}

int AccountCommand(const AccountOptions& options) {
  if (options.ms.empty() && !options.budget) {
    throw UsageError("give --m values and/or --budget");
  }
  if (options.sigmas.empty()) throw UsageError("sigma list is empty");
  for (int64_t m : options.ms) {
    if (m < 0) throw std::invalid_argument("query count must be >= 0");
  }
  std::ostringstream csv;
  csv << VersionLine() << "m,sigma,delta,epsilon,alpha_star\n";
  for (double sigma : options.sigmas) {
    PrivacyParams params;
    params.sigma = sigma;
    params.delta = options.delta;
    params.Validate();
    std::vector<int64_t> ms = options.ms;
    if (options.budget) {
      ms.push_back(MaxQueriesWithinBudget(params, *options.budget));
    }
    for (int64_t m : ms) {
      const PrivacyAccount account = Account(params, m);
      csv << m << ',' << FormatDouble(sigma) << ','
          << FormatDouble(options.delta) << ','
          << FormatDouble(account.epsilon) << ','
          << FormatDouble(account.alpha_star) << '\n';
    }
  }
  WriteFileAtomically(ResolveOutput(options.output, "account.csv"), csv.str());
  return kExitOk;
}

int Detect(const DetectOptions& options) {
  CheckTau(options.tau);
  const auto labeled = ReadLabeledHistogramFile(options.input);
  if (labeled.empty()) {
    throw std::invalid_argument(options.input + ": no histograms");
  }
  std::vector<Prediction> predictions;
  predictions.reserve(labeled.size());
  for (const auto& l : labeled) {
    predictions.push_back({l.id, ClassifyByConsensus(l.histogram, options.tau)});
  }
  const AttributeMetrics metrics = Evaluate(predictions, labeled);
  std::ostringstream csv;
  csv << VersionLine() << kMetricsHeader << '\n';
  AppendMetrics(csv, "input", labeled.size(), options.tau, metrics);
  csv << '\n';
  WriteFileAtomically(ResolveOutput(options.output, "detect.csv"), csv.str());
  return kExitOk;
}

int E2e(const E2eOptions& options) {
  CheckWorkers(options.workers);
  CheckSigma(options.sigma);
  CheckTau(options.tau);
  options.limit.Validate();
  options.optimizer.Validate();
  if (options.size < 1) throw std::invalid_argument("--size must be >= 1");
  SynthPopulationSpec spec = options.population;
  spec.seed = DeriveSeed(options.seed, 1, 0);
  spec.Validate();
  const int64_t m = options.limit.QueriesFor(options.sigma);
  if (m < 1) throw std::invalid_argument("budget affords no queries");

  const std::vector<LabeledHistogram> population =
      GeneratePopulation(spec, options.size);
  std::vector<ReconstructionResult> recon(population.size());
  ParallelFor(population.size(), options.workers, [&](size_t i) {
    const VoteHistogram& truth = population[i].histogram;
    const QuerySample sample =
        Sample(truth, {options.sigma, DeriveSeed(options.seed, 2, i)}, m);
    recon[i] = Reconstruct(EstimateDistribution(sample), options.sigma, truth,
                           options.optimizer);
  });

  PrivacyParams params;
  params.sigma = options.sigma;
  params.delta = options.limit.delta;
  const double epsilon = Account(params, m).epsilon;

  std::vector<Prediction> from_truth, from_recon;
  std::ostringstream members;
  members << VersionLine()
          << "id,group,true_consensus,true_prediction,recovered_consensus,"
             "recovered_prediction,agree,m,epsilon,error,iterations,"
             "stop_reason\n";
  int64_t agree = 0;
  bool all_converged = true;
  for (size_t i = 0; i < population.size(); ++i) {
    const auto& member = population[i];
    const auto& r = recon[i];
    const Group truth_pred = ClassifyByConsensus(member.histogram, options.tau);
    const Group recon_pred = ClassifyByConsensus(r.estimate, options.tau);
    from_truth.push_back({member.id, truth_pred});
    from_recon.push_back({member.id, recon_pred});
    agree += truth_pred == recon_pred ? 1 : 0;
    all_converged = all_converged && Converged(r.stop_reason);
    double total = 0.0, top = r.estimate.front();
    for (double v : r.estimate) {
      total += v;
      top = std::max(top, v);
    }
    members << member.id << ',' << ToString(member.group) << ','
            << FormatDouble(Consensus(member.histogram)) << ','
            << ToString(truth_pred) << ',' << FormatDouble(top / total) << ','
            << ToString(recon_pred) << ','
            << (truth_pred == recon_pred ? 1 : 0) << ',' << m << ','
            << FormatDouble(epsilon) << ',' << FormatDouble(*r.error) << ','
            << r.iterations << ',' << ToString(r.stop_reason) << '\n';
  }

  std::ostringstream metrics;
  metrics << VersionLine() << kMetricsHeader << ",agreement\n";
  const double agreement =
      static_cast<double>(agree) / static_cast<double>(population.size());
  AppendMetrics(metrics, "true", population.size(), options.tau,
                Evaluate(from_truth, population));
  metrics << ",1\n";
  AppendMetrics(metrics, "recovered", population.size(), options.tau,
                Evaluate(from_recon, population));
  metrics << ',' << FormatDouble(agreement) << '\n';

  if (!options.population_output.empty()) {
    std::ostringstream labeled;
    labeled << VersionLine();
    WriteLabeledHistograms(labeled, population);
    WriteFileAtomically(options.population_output, labeled.str());
  }
  WriteFileAtomically(ResolveOutput(options.metrics_output, "e2e_metrics.csv"),
                      metrics.str());
  WriteFileAtomically(ResolveOutput(options.output, "e2e.csv"), members.str());
  return all_converged ? kExitOk : kExitNonConvergence;
}

namespace {

void AddQueryLimit(CLI::App* cmd, QueryLimit& limit) {
  cmd->add_option("--m", limit.m, "Queries per histogram (hard limit)");
  cmd->add_option("--budget", limit.budget,
                  "Privacy budget epsilon; queries stop at the largest m "
                  "within it");
  cmd->add_option("--delta", limit.delta, "Target delta")
      ->capture_default_str();
}

void AddOptimizer(CLI::App* cmd, OptimizerConfig& cfg,
                  std::string& stop_mode, std::string& init) {
  cmd->add_option("--loss-threshold", cfg.loss_threshold,
                  "Stop once ||Q(H)-q|| falls below this")
      ->capture_default_str();
  cmd->add_option("--lr-initial", cfg.lr_numerator_initial,
                  "Initial step length in votes")
      ->capture_default_str();
  cmd->add_option("--lr-final", cfg.lr_numerator_final,
                  "Step length after the switch")
      ->capture_default_str();
  cmd->add_option("--lr-switch", cfg.lr_switch_loss,
                  "Loss below which the final step length is used")
      ->capture_default_str();
  cmd->add_option("--max-iters", cfg.max_iters, "Iteration cap")
      ->capture_default_str();
  cmd->add_option("--stop-mode", stop_mode, "loss | negative | both")
      ->check(CLI::IsMember({"loss", "negative", "both"}))
      ->capture_default_str();
  cmd->add_option("--init", init, "zeros | uniform")
      ->check(CLI::IsMember({"zeros", "uniform"}))
      ->capture_default_str();
  cmd->add_option("--grid-width", cfg.grid.half_width_sigmas,
                  "Integration half-width in sigmas")
      ->capture_default_str();
  cmd->add_option("--grid-step", cfg.grid.step,
                  "Integration step in votes (capped at sigma/10)")
      ->capture_default_str();
}

constexpr char kReconstructColumns[] =
    "Columns: histogram,group,consensus,sigma,rep,seed,m,epsilon,alpha_star,"
    "error,final_loss,iterations,stop_reason,converged,estimate";

}  // namespace

int Main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Histogram reconstruction attack on PATE's noisy argmax",
               "pateleak"};
  app.set_version_flag("--version", kVersion);
  app.set_config("--config", "",
                 "TOML/INI file with option values; command-line flags win");
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Query the noisy argmax repeatedly; write answer counts.\n"
                  "Columns: histogram,sigma,seed,n_teachers,m,counts");
  sim_cmd->add_option("--input", sim.input, "Histogram file")->required();
  sim_cmd->add_option("--out", sim.output, "Output sample file");
  sim_cmd->add_option("--sigma", sim.sigma, "Noise scale")
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
  sim_cmd->add_option("--workers", sim.workers, "Worker threads")
      ->capture_default_str();
  AddQueryLimit(sim_cmd, sim.limit);

  ReconstructOptions rec;
  std::string rec_stop = std::string(ToString(rec.optimizer.stop_mode));
  std::string rec_init = std::string(ToString(rec.optimizer.init));
  auto* rec_cmd = app.add_subcommand(
      "reconstruct",
      std::string("Sample and reconstruct each histogram.\n") +
          kReconstructColumns);
  rec_cmd->add_option("--input", rec.input, "Histogram file (ground truth)");
  rec_cmd->add_option("--samples", rec.samples, "Sample file from simulate");
  rec_cmd->add_option("--out", rec.output, "Output CSV");
  rec_cmd->add_option("--trace-dir", rec.trace_dir,
                      "Write per-run loss traces here");
  rec_cmd->add_option("--sigma", rec.sigmas, "Noise scale(s)")
      ->delimiter(',')
      ->capture_default_str();
  rec_cmd->add_option("--repeats", rec.repeats, "Seeds per histogram")
      ->capture_default_str();
  rec_cmd->add_option("--seed", rec.seed, "Base seed")->capture_default_str();
  rec_cmd->add_option("--workers", rec.workers, "Worker threads")
      ->capture_default_str();
  AddQueryLimit(rec_cmd, rec.limit);
  AddOptimizer(rec_cmd, rec.optimizer, rec_stop, rec_init);

  ReconstructOptions sweep;
  sweep.sigmas.clear();
  std::string sweep_stop = std::string(ToString(sweep.optimizer.stop_mode));
  std::string sweep_init = std::string(ToString(sweep.optimizer.init));
  auto* sweep_cmd = app.add_subcommand(
      "sweep", std::string("Reconstruct over sigma x histogram x seed.\n") +
                   kReconstructColumns);
  sweep_cmd->add_option("--input", sweep.input, "Histogram file")->required();
  sweep_cmd->add_option("--out", sweep.output, "Output CSV");
  sweep_cmd->add_option("--trace-dir", sweep.trace_dir,
                        "Write per-run loss traces here");
  sweep_cmd->add_option("--sigma", sweep.sigmas, "Noise scales, e.g. 0.1,40")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--repeats", sweep.repeats, "Seeds per cell")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "Base seed")
      ->capture_default_str();
  sweep_cmd->add_option("--workers", sweep.workers, "Worker threads")
      ->capture_default_str();
  AddQueryLimit(sweep_cmd, sweep.limit);
  AddOptimizer(sweep_cmd, sweep.optimizer, sweep_stop, sweep_init);

  AccountOptions acct;
  auto* acct_cmd = app.add_subcommand(
      "account", "Privacy cost of m answers.\n"
                 "Columns: m,sigma,delta,epsilon,alpha_star");
  acct_cmd->add_option("--m", acct.ms, "Query counts")->delimiter(',');
  acct_cmd->add_option("--sigma", acct.sigmas, "Noise scale(s)")
      ->delimiter(',')
      ->capture_default_str();
  acct_cmd->add_option("--delta", acct.delta, "Target delta")
      ->capture_default_str();
  acct_cmd->add_option("--budget", acct.budget,
                       "Also report the largest m within this epsilon");
  acct_cmd->add_option("--out", acct.output, "Output CSV");

  DetectOptions det;
  auto* det_cmd = app.add_subcommand(
      "detect",
      std::string("Consensus-threshold minority detection.\nColumns: ") +
          kMetricsHeader);
  det_cmd->add_option("--input", det.input, "Labeled histogram file")
      ->required();
  det_cmd->add_option("--tau", det.tau, "Consensus threshold")
      ->capture_default_str();
  det_cmd->add_option("--out", det.output, "Output CSV");

  E2eOptions e2e;
  std::string e2e_stop = std::string(ToString(e2e.optimizer.stop_mode));
  std::string e2e_init = std::string(ToString(e2e.optimizer.init));
  auto* e2e_cmd = app.add_subcommand(
      "e2e", "Synthetic population -> simulate -> reconstruct -> detect.\n"
             "Members columns: id,group,true_consensus,true_prediction,"
             "recovered_consensus,recovered_prediction,agree,m,epsilon,error,"
             "iterations,stop_reason\n"
             "Metrics columns: " +
                 std::string(kMetricsHeader) + ",agreement");
  e2e_cmd->add_option("--out", e2e.output, "Per-member CSV");
  e2e_cmd->add_option("--metrics-out", e2e.metrics_output, "Metrics CSV");
  e2e_cmd->add_option("--population-out", e2e.population_output,
                      "Also write the generated labeled histograms");
  e2e_cmd->add_option("--size", e2e.size, "Population size")
      ->capture_default_str();
  e2e_cmd->add_option("--teachers", e2e.population.n_teachers, "Teachers")
      ->capture_default_str();
  e2e_cmd->add_option("--classes", e2e.population.n_classes, "Classes")
      ->capture_default_str();
  e2e_cmd->add_option("--minority-fraction", e2e.population.minority_fraction,
                      "Share of minority members")
      ->capture_default_str();
  e2e_cmd->add_option("--majority-consensus",
                      e2e.population.majority_consensus_mean,
                      "Mean consensus of majority members")
      ->capture_default_str();
  e2e_cmd->add_option("--minority-consensus",
                      e2e.population.minority_consensus_mean,
                      "Mean consensus of minority members")
      ->capture_default_str();
  e2e_cmd->add_option("--spread", e2e.population.spread,
                      "Consensus standard deviation")
      ->capture_default_str();
  e2e_cmd->add_option("--sigma", e2e.sigma, "Noise scale")
      ->capture_default_str();
  e2e_cmd->add_option("--tau", e2e.tau, "Consensus threshold")
      ->capture_default_str();
  e2e_cmd->add_option("--seed", e2e.seed, "Base seed")->capture_default_str();
  e2e_cmd->add_option("--workers", e2e.workers, "Worker threads")
      ->capture_default_str();
  AddQueryLimit(e2e_cmd, e2e.limit);
  AddOptimizer(e2e_cmd, e2e.optimizer, e2e_stop, e2e_init);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim_cmd->parsed()) return Simulate(sim);
    if (rec_cmd->parsed()) {
      rec.optimizer.stop_mode = ParseStopMode(rec_stop);
      rec.optimizer.init = ParseInitMode(rec_init);
      return ReconstructCommand(rec);
    }
    if (sweep_cmd->parsed()) {
      sweep.optimizer.stop_mode = ParseStopMode(sweep_stop);
      sweep.optimizer.init = ParseInitMode(sweep_init);
      return Sweep(sweep);
    }
    if (acct_cmd->parsed()) return AccountCommand(acct);
    if (det_cmd->parsed()) return Detect(det);
    if (e2e_cmd->parsed()) {
      e2e.optimizer.stop_mode = ParseStopMode(e2e_stop);
      e2e.optimizer.init = ParseInitMode(e2e_init);
      return E2e(e2e);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace pateleak::cli
