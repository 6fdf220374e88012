// include/vcvts/media/analysis-config.h

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

#ifndef VCVTS_MEDIA_ANALYSIS_CONFIG_H_
#define VCVTS_MEDIA_ANALYSIS_CONFIG_H_

#include <cstdint>

namespace vcvts {

struct AnalysisConfig {
  int sample_rate = 16000;
  int fft_size = 400;
  int hop = 160;  // 10 ms
  int window = 400;
  int mel_bins = 80;
  double fmin = 0.0;
  double fmax = 8000.0;
  double log_floor = 1e-5;
  int gl_iterations = 60;
  std::uint64_t gl_seed = 0;
  double f0_min = 50.0;
  double f0_max = 500.0;
  double voicing_threshold = 0.3;

  double FrameRate() const { return static_cast<double>(sample_rate) / hop; }
  /// Throws ContractError unless hop <= window <= fft_size and
  /// fmin < fmax <= sample_rate / 2.
  void Validate() const;
};

}  // namespace vcvts

#endif  // VCVTS_MEDIA_ANALYSIS_CONFIG_H_
