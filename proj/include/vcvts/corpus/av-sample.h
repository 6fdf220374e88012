// include/vcvts/corpus/av-sample.h

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

#ifndef VCVTS_CORPUS_AV_SAMPLE_H_
#define VCVTS_CORPUS_AV_SAMPLE_H_

#include <optional>
#include <string>
#include <vector>

#include "vcvts/corpus/manifest.h"
#include "vcvts/media/align.h"
#include "vcvts/media/analysis-config.h"
#include "vcvts/media/lip-sequence.h"
#include "vcvts/media/mel-spectrogram.h"
#include "vcvts/media/pitch.h"

namespace vcvts {

/// Paired streams of one clip with mel frames == 4 * lip frames == F0 frames.
struct AVSample {
  std::string sample_id;
  std::string speaker_id;
  MelSpectrogram mel;
  LipSequence lips;
  PitchContour f0;
  std::optional<std::vector<PhonemeSegment>> alignment;
};

AVSample LoadSample(const Manifest &manifest, const std::string &sample_id,
                    const AnalysisConfig &cfg = {});

std::vector<AVSample> LoadSplit(const Manifest &manifest, Split split,
                                const AnalysisConfig &cfg = {});

}  // namespace vcvts

#endif  // VCVTS_CORPUS_AV_SAMPLE_H_
