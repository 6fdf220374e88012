// src/corpus/av-sample.cc

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

#include "vcvts/corpus/av-sample.h"

#include <algorithm>

#include "vcvts/base/error.h"

namespace vcvts {

AVSample LoadSample(const Manifest &manifest, const std::string &sample_id,
                    const AnalysisConfig &cfg) {
  const ManifestEntry &e = manifest.Find(sample_id);
  const Waveform wave = LoadWaveform(manifest.Resolve(e.wav_path), cfg.sample_rate);
  AVSample s;
  s.sample_id = e.sample_id;
  s.speaker_id = e.speaker_id;
  auto [mel, lips] = AlignLengths(ComputeMelSpectrogram(wave, cfg),
                                  ReadLips(manifest.Resolve(e.lip_path)));
  s.mel = std::move(mel);
  s.lips = std::move(lips);
  s.f0 = ExtractF0(wave, cfg).Head(s.mel.NumFrames());
  if (e.alignment) {
    std::vector<PhonemeSegment> segs;
    for (PhonemeSegment seg : *e.alignment) {
      if (seg.start >= s.mel.NumFrames()) continue;
      seg.end = std::min(seg.end, s.mel.NumFrames());
      segs.push_back(seg);
    }
    s.alignment = std::move(segs);
  }
  return s;
}

std::vector<AVSample> LoadSplit(const Manifest &manifest, Split split,
                                const AnalysisConfig &cfg) {
  std::vector<AVSample> out;
  for (const ManifestEntry *e : manifest.Entries(split))
    out.push_back(LoadSample(manifest, e->sample_id, cfg));
  return out;
}

}  // namespace vcvts
