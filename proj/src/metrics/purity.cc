// src/metrics/purity.cc

// Copyright 2026  vcvts authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "vcvts/metrics/purity.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vcvts/base/error.h"

namespace vcvts {

nlohmann::json PurityReport::ToJson() const {
  nlohmann::json j;
  j["purity"] = purity;
  j["usage_entropy_bits"] = usage_entropy_bits;
  j["codes_used"] = codes_used;
  j["num_codes"] = num_codes;
  j["num_frames"] = num_frames;
  nlohmann::json hist = nlohmann::json::object();
  for (const auto &[label, counts] : histograms) {
    nlohmann::json row = nlohmann::json::object();
    for (const auto &[index, n] : counts) row[std::to_string(index)] = n;
    hist[std::to_string(label)] = row;
  }
  j["histograms"] = hist;
  return j;
}

PurityReport UnitPurityReport(
    const std::vector<std::vector<int>> &indices,
    const std::vector<std::vector<PhonemeSegment>> &alignments, int num_codes) {
  if (indices.size() != alignments.size())
    throw ContractError("purity: one alignment per sample required");
  PurityReport report;
  report.num_codes = num_codes;
  std::vector<long> usage(num_codes, 0);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (alignments[k].empty())
      throw ContractError("purity: sample " + std::to_string(k) + " has no alignment");
    const std::vector<int> labels =
        UnitFrameLabels(alignments[k], static_cast<int>(indices[k].size()));
    for (std::size_t t = 0; t < indices[k].size(); ++t) {
      const int idx = indices[k][t];
      if (idx < 0 || idx >= num_codes) throw ContractError("purity: index out of range");
      if (labels[t] < 0) continue;
      ++report.histograms[labels[t]][idx];
      ++usage[idx];
      ++report.num_frames;
    }
  }
  if (report.num_frames == 0) throw ContractError("purity: no labelled frames");

  long majority = 0;
  for (const auto &[label, counts] : report.histograms) {
    long best = 0;
    for (const auto &[index, n] : counts) best = std::max(best, n);
    majority += best;
  }
  report.purity = static_cast<double>(majority) / report.num_frames;
  for (long n : usage) {
    if (n == 0) continue;
    ++report.codes_used;
    const double p = static_cast<double>(n) / report.num_frames;
    report.usage_entropy_bits -= p * std::log2(p);
  }
  return report;
}

std::string IndexOverlaySvg(const std::vector<int> &indices,
                            const std::vector<PhonemeSegment> &alignment,
                            int num_codes) {
  const double width = 800, height = 300, margin = 30;
  const double dx = (width - 2 * margin) / std::max<std::size_t>(1, indices.size());
  const double dy = (height - 2 * margin) / std::max(1, num_codes);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t s = 0; s < alignment.size(); ++s) {
    const PhonemeSegment &seg = alignment[s];
    const double x0 = margin + dx * seg.start / 2.0;
    const double w = dx * (seg.end - seg.start) / 2.0;
    const int hue = (seg.label * 47) % 360;
    os << "<rect x=\"" << x0 << "\" y=\"" << margin << "\" width=\"" << w
       << "\" height=\"" << height - 2 * margin << "\" fill=\"hsl(" << hue
       << ",60%,85%)\"/>\n";
    os << "<text x=\"" << x0 + 2 << "\" y=\"" << margin - 8
       << "\" font-size=\"10\">" << seg.label << "</text>\n";
  }
  for (std::size_t t = 0; t < indices.size(); ++t) {
    const double x = margin + dx * (t + 0.5);
    const double y = height - margin - dy * (indices[t] + 0.5);
    os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2.5\" fill=\"black\"/>\n";
  }
  os << "<text x=\"" << margin << "\" y=\"" << height - 8
     << "\" font-size=\"11\">unit frame</text>\n";
  os << "<text x=\"4\" y=\"" << margin + 10 << "\" font-size=\"11\">index</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace vcvts
