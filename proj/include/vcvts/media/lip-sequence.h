// include/vcvts/media/lip-sequence.h

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

#ifndef VCVTS_MEDIA_LIP_SEQUENCE_H_
#define VCVTS_MEDIA_LIP_SEQUENCE_H_

#include <cstddef>
#include <string>
#include <vector>

namespace vcvts {

constexpr double kLipFrameRate = 25.0;

/// Grayscale lip crops, row-major L x H x W, intensities in [0, 1].
struct LipSequence {
  int num_frames = 0;
  int height = 0;
  int width = 0;
  double frame_rate = kLipFrameRate;
  std::vector<float> pixels;

  LipSequence() = default;
  LipSequence(int frames, int h, int w)
      : num_frames(frames), height(h), width(w),
        pixels(static_cast<std::size_t>(frames) * h * w, 0.0f) {}

  std::size_t FrameSize() const {
    return static_cast<std::size_t>(height) * width;
  }
  float &at(int l, int y, int x) {
    return pixels[l * FrameSize() + static_cast<std::size_t>(y) * width + x];
  }
  float at(int l, int y, int x) const {
    return pixels[l * FrameSize() + static_cast<std::size_t>(y) * width + x];
  }
  /// First `frames` frames.
  LipSequence Head(int frames) const;
  void Validate() const;
};

// Container: 16-byte header {"LIPS", u32 frames, u16 height, u16 width,
// u32 reserved = 0}, then frames*height*width u8 intensities (round(255*v)).
LipSequence ReadLips(const std::string &path);
void WriteLips(const LipSequence &lips, const std::string &path);

}  // namespace vcvts

#endif  // VCVTS_MEDIA_LIP_SEQUENCE_H_
