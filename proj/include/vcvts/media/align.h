// include/vcvts/media/align.h

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

#ifndef VCVTS_MEDIA_ALIGN_H_
#define VCVTS_MEDIA_ALIGN_H_

#include <utility>
#include <vector>

#include "vcvts/media/lip-sequence.h"
#include "vcvts/media/mel-spectrogram.h"

namespace vcvts {

/// Number of 100 FPS mel frames per 25 FPS lip frame.
constexpr int kMelFramesPerLipFrame = 4;

/// A labelled span [start, end) of 100 FPS mel frames.
struct PhonemeSegment {
  int label = 0;
  int start = 0;
  int end = 0;
};

/// Label of every 50 FPS unit frame, taken at its first mel frame; -1 where
/// no segment covers it.
std::vector<int> UnitFrameLabels(const std::vector<PhonemeSegment> &segments,
                                 int num_unit_frames);

/// Trims both streams from the end so that mel frames == 4 * lip frames.
/// Throws ContractError when the streams disagree by more than one lip frame
/// (a corrupt pairing), when frame rates are not 100/25, or when either
/// stream would be empty.
std::pair<MelSpectrogram, LipSequence> AlignLengths(const MelSpectrogram &mel,
                                                    const LipSequence &lips);

}  // namespace vcvts

#endif  // VCVTS_MEDIA_ALIGN_H_
