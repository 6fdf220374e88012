// include/vcvts/corpus/synthetic-corpus.h

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

#ifndef VCVTS_CORPUS_SYNTHETIC_CORPUS_H_
#define VCVTS_CORPUS_SYNTHETIC_CORPUS_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "vcvts/corpus/manifest.h"
#include "vcvts/media/align.h"
#include "vcvts/media/lip-sequence.h"
#include "vcvts/media/pitch.h"
#include "vcvts/media/waveform.h"

namespace vcvts {

struct SynthConfig {
  int num_speakers = 8;
  int num_phonemes = 12;
  int clips_per_speaker = 25;
  double clip_duration_s = 1.2;
  std::uint64_t seed = 7;

  void Validate() const;
};

// Mouth-opening geometry in pixels: half height = base + scale * aperture,
// half width = base + scale * width, centred near (48, 48) of a 96x96 frame.
constexpr int kLipImageSize = 96;
constexpr double kMouthHalfHeightBase = 2.0;
constexpr double kMouthHalfHeightScale = 18.0;
constexpr double kMouthHalfWidthBase = 10.0;
constexpr double kMouthHalfWidthScale = 20.0;
/// Interior intensity of the mouth opening (darker than lips and skin).
constexpr float kMouthIntensity = 0.05f;

struct LipShape {
  double aperture = 0.5;  // in [0, 1]
  double width = 0.5;     // in [0, 1]
};

struct PhonemeSpec {
  bool voiced = true;
  std::array<double, 3> formants_hz{};  // voiced phonemes
  double noise_center_hz = 0.0;         // unvoiced phonemes
  double noise_bandwidth_hz = 0.0;
  double pitch_accent = 0.0;  // relative F0 offset while the phoneme lasts
  LipShape lips;
};

/// Phonemes with index % 4 == 3 are unvoiced noise bands.
PhonemeSpec Phoneme(int index, int num_phonemes);

struct SpeakerProfile {
  std::string speaker_id;
  double base_f0_hz = 120.0;
  double formant_scale = 1.0;
  double aperture_offset = 0.0;
  double width_offset = 0.0;
  float skin_intensity = 0.7f;
  float lip_intensity = 0.35f;
};

SpeakerProfile Speaker(const SynthConfig &cfg, int index);

/// One rendered clip with its ground truth.
struct SyntheticClip {
  std::string sample_id;
  int speaker = 0;
  Waveform wave;
  LipSequence lips;
  std::vector<PhonemeSegment> alignment;  // 100 FPS mel frames
  PitchContour f0;                        // generator F0 at 100 FPS
};

SyntheticClip RenderClip(const SynthConfig &cfg, int speaker, int clip);

/// Writes wav/, lips/, manifest.jsonl and truth.json under `out_dir` and
/// returns the manifest.  Each speaker's clips are split 80/10/10.
Manifest GenerateSyntheticCorpus(const SynthConfig &cfg, const std::string &out_dir);

/// Generator F0 contours and speaker profiles written next to the manifest.
struct CorpusTruth {
  std::vector<SpeakerProfile> speakers;
  std::vector<std::string> sample_ids;
  std::vector<PitchContour> f0;

  const PitchContour &F0(const std::string &sample_id) const;
  const SpeakerProfile &SpeakerById(const std::string &speaker_id) const;
};

CorpusTruth LoadCorpusTruth(const std::string &path);

}  // namespace vcvts

#endif  // VCVTS_CORPUS_SYNTHETIC_CORPUS_H_
