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

#include "pateleak/histogram_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "pateleak/version.h"

namespace pateleak {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool Skippable(std::string_view line) {
  const std::string_view t = Trim(line);
  return t.empty() || t.front() == '#';
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    parts.push_back(Trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T ParseNumber(std::string_view text, const char* what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument(std::string("bad ") + what + " '" +
                                std::string(text) + "'");
  }
  return value;
}

std::vector<int64_t> ParseCounts(std::string_view text, char sep) {
  std::vector<int64_t> counts;
  for (std::string_view field : Split(text, sep)) {
    counts.push_back(ParseNumber<int64_t>(field, "count"));
  }
  return counts;
}

std::ifstream OpenOrThrow(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

}  // namespace

ParseError::ParseError(const std::string& source, int64_t line,
                       const std::string& why)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + why),
      line_(line) {}

VoteHistogram ParseHistogramLine(std::string_view line) {
  return VoteHistogram(ParseCounts(Trim(line), ','));
}

std::string FormatHistogramLine(const VoteHistogram& h) {
  std::string out;
  for (size_t i = 0; i < h.num_classes(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(h[i]);
  }
  return out;
}

std::vector<VoteHistogram> ReadHistograms(std::istream& in,
                                          const std::string& source) {
  std::vector<VoteHistogram> out;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Skippable(line)) continue;
    try {
      out.push_back(ParseHistogramLine(line));
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return out;
}

std::vector<VoteHistogram> ReadHistogramFile(const std::string& path) {
  auto in = OpenOrThrow(path);
  return ReadHistograms(in, path);
}

std::vector<LabeledHistogram> ReadLabeledHistograms(std::istream& in,
                                                    const std::string& source) {
  std::vector<LabeledHistogram> out;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Skippable(line)) continue;
    try {
      std::string_view body = Trim(line);
      std::string id = "line-" + std::to_string(line_no);
      if (const auto colon = body.find(':'); colon != std::string_view::npos) {
        id = std::string(Trim(body.substr(0, colon)));
        body = body.substr(colon + 1);
      }
      const auto semi = body.rfind(';');
      if (semi == std::string_view::npos) {
        throw std::invalid_argument("missing ;minority or ;majority tag");
      }
      Group group = ParseGroup(Trim(body.substr(semi + 1)));
      out.push_back({std::move(id), ParseHistogramLine(body.substr(0, semi)),
                     group});
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return out;
}

std::vector<LabeledHistogram> ReadLabeledHistogramFile(
    const std::string& path) {
  auto in = OpenOrThrow(path);
  return ReadLabeledHistograms(in, path);
}

void WriteLabeledHistograms(std::ostream& out,
                            std::span<const LabeledHistogram> hists) {
  for (const auto& h : hists) {
    out << h.id << ':' << FormatHistogramLine(h.histogram) << ';'
        << ToString(h.group) << '\n';
  }
}

int64_t SampleRecord::m() const {
  int64_t m = 0;
  for (int64_t c : counts) m += c;
  return m;
}

void WriteSamples(std::ostream& out, std::span<const SampleRecord> records) {
  out << "# pateleak " << kVersion << '\n';
  out << "histogram,sigma,seed,n_teachers,m,counts\n";
  for (const auto& r : records) {
    out << r.histogram << ',' << FormatDouble(r.sigma) << ',' << r.seed << ','
        << r.n_teachers << ',' << r.m() << ',';
    for (size_t i = 0; i < r.counts.size(); ++i) {
      if (i > 0) out << ';';
      out << r.counts[i];
    }
    out << '\n';
  }
}

std::vector<SampleRecord> ReadSamples(std::istream& in,
                                      const std::string& source) {
  std::vector<SampleRecord> out;
  std::string line;
  int64_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (Skippable(line)) continue;
    if (!header_seen) {
      if (Trim(line) != "histogram,sigma,seed,n_teachers,m,counts") {
        throw ParseError(source, line_no, "unexpected sample-file header");
      }
      header_seen = true;
      continue;
    }
    try {
      const auto fields = Split(Trim(line), ',');
      if (fields.size() != 6) {
        throw std::invalid_argument("expected 6 fields, got " +
                                    std::to_string(fields.size()));
      }
      SampleRecord r;
      r.histogram = std::string(fields[0]);
      r.sigma = ParseNumber<double>(fields[1], "sigma");
      r.seed = ParseNumber<uint64_t>(fields[2], "seed");
      r.n_teachers = ParseNumber<int64_t>(fields[3], "n_teachers");
      const auto m = ParseNumber<int64_t>(fields[4], "m");
      r.counts = ParseCounts(fields[5], ';');
      if (r.counts.size() < 2) throw std::invalid_argument("need >= 2 classes");
      for (int64_t c : r.counts) {
        if (c < 0) throw std::invalid_argument("negative count");
      }
      if (r.m() != m) throw std::invalid_argument("counts do not sum to m");
      if (m <= 0) throw std::invalid_argument("empty sample");
      if (r.n_teachers <= 0) throw std::invalid_argument("n_teachers <= 0");
      out.push_back(std::move(r));
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return out;
}

std::vector<SampleRecord> ReadSampleFile(const std::string& path) {
  auto in = OpenOrThrow(path);
  return ReadSamples(in, path);
}

std::string FormatDouble(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace pateleak
