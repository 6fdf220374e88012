// src/media/align.cc

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

#include "vcvts/media/align.h"

#include <algorithm>
#include <cmath>

#include "vcvts/base/error.h"

namespace vcvts {

std::pair<MelSpectrogram, LipSequence> AlignLengths(const MelSpectrogram &mel,
                                                    const LipSequence &lips) {
  if (std::abs(mel.frame_rate - 100.0) > 1e-9 ||
      std::abs(lips.frame_rate - kLipFrameRate) > 1e-9)
    throw ContractError("AlignLengths expects 100 FPS mels and 25 FPS lips");
  const int T = mel.NumFrames();
  const int L = lips.num_frames;
  const double expected_lips = static_cast<double>(T) / kMelFramesPerLipFrame;
  if (std::abs(expected_lips - L) > 1.0)
    throw ContractError("mel/lip length mismatch: " + std::to_string(T) +
                        " mel frames vs " + std::to_string(L) + " lip frames");
  const int lips_out = std::min(L, T / kMelFramesPerLipFrame);
  if (lips_out < 1) throw ContractError("streams empty after alignment");
  return {mel.Head(lips_out * kMelFramesPerLipFrame), lips.Head(lips_out)};
}

std::vector<int> UnitFrameLabels(const std::vector<PhonemeSegment> &segments,
                                 int num_unit_frames) {
  std::vector<int> labels(num_unit_frames, -1);
  for (const PhonemeSegment &seg : segments) {
    const int first = std::max(0, (seg.start + 1) / 2);
    for (int t = first; 2 * t < seg.end && t < num_unit_frames; ++t)
      labels[t] = seg.label;
  }
  return labels;
}

}  // namespace vcvts
