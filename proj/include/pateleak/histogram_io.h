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

// Flat-file formats.
//
// Histogram file: one histogram per line, comma-separated non-negative
// integer counts. Blank lines and lines starting with '#' are skipped.
//
//   # mnist high H1
//   4,7,6,8,4,2,0,214,4,1
//
// Labeled histogram file: the same, with a trailing ";minority" or
// ";majority" tag. An optional leading "id:" names the entry; otherwise ids
// are "line-<n>".
//
// Sample file (written by `pateleak simulate`): a "# pateleak <version>"
// line, then the CSV header
//
//   histogram,sigma,seed,n_teachers,m,counts
//
// where counts is the per-class answer tally joined with ';'.

#ifndef PATELEAK_HISTOGRAM_IO_H_
#define PATELEAK_HISTOGRAM_IO_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pateleak/attribute.h"
#include "pateleak/histogram.h"

namespace pateleak {

// Malformed input. what() carries "<source>:<line>: <reason>".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int64_t line, const std::string& why);

  int64_t line() const { return line_; }

 private:
  int64_t line_;
};

// Throws std::invalid_argument on a malformed line.
VoteHistogram ParseHistogramLine(std::string_view line);
std::string FormatHistogramLine(const VoteHistogram& h);

std::vector<VoteHistogram> ReadHistograms(std::istream& in,
                                          const std::string& source = "input");
std::vector<VoteHistogram> ReadHistogramFile(const std::string& path);

std::vector<LabeledHistogram> ReadLabeledHistograms(
    std::istream& in, const std::string& source = "input");
std::vector<LabeledHistogram> ReadLabeledHistogramFile(
    const std::string& path);
void WriteLabeledHistograms(std::ostream& out,
                            std::span<const LabeledHistogram> hists);

struct SampleRecord {
  std::string histogram;  // Row label of the source histogram.
  double sigma = 0.0;
  uint64_t seed = 0;
  int64_t n_teachers = 0;
  std::vector<int64_t> counts;

  int64_t m() const;
};

void WriteSamples(std::ostream& out, std::span<const SampleRecord> records);
std::vector<SampleRecord> ReadSamples(std::istream& in,
                                      const std::string& source = "input");
std::vector<SampleRecord> ReadSampleFile(const std::string& path);

// Formats a double with enough digits to round-trip.
std::string FormatDouble(double v);

}  // namespace pateleak

#endif  // PATELEAK_HISTOGRAM_IO_H_
