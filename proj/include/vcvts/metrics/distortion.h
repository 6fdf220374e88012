// include/vcvts/metrics/distortion.h

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

#ifndef VCVTS_METRICS_DISTORTION_H_
#define VCVTS_METRICS_DISTORTION_H_

#include <functional>
#include <utility>
#include <vector>

#include "vcvts/media/analysis-config.h"
#include "vcvts/media/mel-spectrogram.h"
#include "vcvts/media/pitch.h"
#include "vcvts/media/waveform.h"

namespace vcvts {

/// 10 sqrt(2) / ln 10: converts a natural-log cepstral distance to dB.
inline constexpr double kMcdScale = 6.141851463713754;

struct DtwPath {
  double cost = 0.0;
  std::vector<std::pair<int, int>> pairs;  // (row of a, row of b), in order
};

/// Dynamic time warping with steps (1,1), (1,0), (0,1).  Among paths of
/// minimal accumulated cost the shortest one wins, which keeps the result
/// symmetric under swapping the two sequences.
DtwPath Dtw(int n, int m, const std::function<double(int, int)> &local_cost);

/// Orthonormal DCT-II of each log-mel frame, coefficients 1..order.
FrameMatrix MelCepstra(const MelSpectrogram &mel, int order = 13);

/// Mean DTW-aligned Euclidean cepstral distance scaled by kMcdScale.
double McdFromCepstra(const FrameMatrix &a, const FrameMatrix &b);

/// Mel-cepstral distortion in dB between two waveforms.
double Mcd(const Waveform &reference, const Waveform &degraded,
           const AnalysisConfig &cfg = {});

struct F0RmseResult {
  double rmse_hz = 0.0;
  int co_voiced = 0;
};

/// RMSE in Hz over frames voiced in both contours, after DTW on log F0.
F0RmseResult F0Rmse(const PitchContour &reference, const PitchContour &degraded);

}  // namespace vcvts

#endif  // VCVTS_METRICS_DISTORTION_H_
