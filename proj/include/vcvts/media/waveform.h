// include/vcvts/media/waveform.h

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

#ifndef VCVTS_MEDIA_WAVEFORM_H_
#define VCVTS_MEDIA_WAVEFORM_H_

#include <span>
#include <string>
#include <vector>

namespace vcvts {

constexpr int kDefaultSampleRate = 16000;

struct Waveform {
  std::vector<float> samples;  // amplitudes in [-1, 1]
  int sample_rate = kDefaultSampleRate;

  std::size_t size() const { return samples.size(); }
  double Duration() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
  /// Throws ContractError unless sample_rate > 0, the waveform is non-empty
  /// and every sample is finite.
  void Validate() const;
};

/// Reads a RIFF PCM16 mono WAV without resampling.
Waveform ReadWav(const std::string &path);

/// Reads a PCM16 mono WAV and resamples it to `target_rate` when needed.
Waveform LoadWaveform(const std::string &path,
                      int target_rate = kDefaultSampleRate);

/// Writes PCM16 mono; samples are clipped to [-1, 1].
void WriteWav(const Waveform &wave, const std::string &path);

/// Band-limited (windowed-sinc) sample-rate conversion.  Output length is
/// round(|input| * to_rate / from_rate).
std::vector<float> Resample(std::span<const float> input, int from_rate,
                            int to_rate);

Waveform Resample(const Waveform &wave, int to_rate);

}  // namespace vcvts

#endif  // VCVTS_MEDIA_WAVEFORM_H_
