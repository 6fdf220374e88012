// include/vcvts/metrics/purity.h

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

#ifndef VCVTS_METRICS_PURITY_H_
#define VCVTS_METRICS_PURITY_H_

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vcvts/media/align.h"

namespace vcvts {

/// How consistently phonemes map to codebook indices.
struct PurityReport {
  /// Frame-weighted mean over phonemes of the share of frames taken by the
  /// phoneme's most frequent index.
  double purity = 0.0;
  /// Entropy (bits) of the index usage distribution.
  double usage_entropy_bits = 0.0;
  int codes_used = 0;
  int num_codes = 0;
  long num_frames = 0;
  /// phoneme label -> index -> frame count.
  std::map<int, std::map<int, long>> histograms;

  nlohmann::json ToJson() const;
};

/// `indices[k]` holds one sample's 50 FPS unit indices and `alignments[k]`
/// its phoneme segments in 100 FPS mel frames.  Unit frames not covered by
/// any segment are skipped.
PurityReport UnitPurityReport(const std::vector<std::vector<int>> &indices,
                              const std::vector<std::vector<PhonemeSegment>> &alignments,
                              int num_codes);

/// Index-over-time plot with phoneme spans shaded underneath.
std::string IndexOverlaySvg(const std::vector<int> &indices,
                            const std::vector<PhonemeSegment> &alignment,
                            int num_codes);

}  // namespace vcvts

#endif  // VCVTS_METRICS_PURITY_H_
