// include/vcvts/media/pitch.h

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

#ifndef VCVTS_MEDIA_PITCH_H_
#define VCVTS_MEDIA_PITCH_H_

#include <cstdint>
#include <vector>

#include "vcvts/media/analysis-config.h"
#include "vcvts/media/waveform.h"

namespace vcvts {

/// Per-frame F0 in Hz; values[t] == 0 exactly when voiced[t] == 0.
struct PitchContour {
  std::vector<float> values;
  std::vector<std::uint8_t> voiced;
  double frame_rate = 100.0;

  int size() const { return static_cast<int>(values.size()); }
  int NumVoiced() const;
  PitchContour Head(int t) const;
  void Validate() const;
};

/// One estimate per hop from the peak of the normalized cross-correlation
/// over lags [fs/f0_max, fs/f0_min]; frames whose peak correlation is below
/// cfg.voicing_threshold are unvoiced.  Length equals the mel frame count
/// floor(|samples| / hop).
PitchContour ExtractF0(const Waveform &wave, const AnalysisConfig &cfg);

/// Halves the frame rate: each output frame is the mean of the voiced
/// members of an input pair, unvoiced if neither member is voiced.
PitchContour PoolF0ToUnitRate(const PitchContour &contour);

/// Mean and standard deviation of log F0 over voiced frames.
struct LogF0Stats {
  float mean = 0.0f;
  float stddev = 1.0f;
};

LogF0Stats ComputeLogF0Stats(const PitchContour &contour);

/// (log f - mean) / stddev on voiced frames, 0 on unvoiced ones.
std::vector<float> NormalizeLogF0(const PitchContour &contour,
                                  const LogF0Stats &stats);

/// Inverse of NormalizeLogF0 for frames flagged voiced.
PitchContour DenormalizeLogF0(const std::vector<float> &normalized,
                              const std::vector<std::uint8_t> &voiced,
                              const LogF0Stats &stats, double frame_rate);

}  // namespace vcvts

#endif  // VCVTS_MEDIA_PITCH_H_
