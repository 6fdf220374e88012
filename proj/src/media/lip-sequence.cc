// src/media/lip-sequence.cc

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

#include "vcvts/media/lip-sequence.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "vcvts/base/binary-io.h"
#include "vcvts/base/error.h"

namespace vcvts {

LipSequence LipSequence::Head(int frames) const {
  if (frames < 0 || frames > num_frames)
    throw ContractError("LipSequence::Head out of range");
  LipSequence out(frames, height, width);
  out.frame_rate = frame_rate;
  std::copy_n(pixels.begin(), frames * FrameSize(), out.pixels.begin());
  return out;
}

void LipSequence::Validate() const {
  if (num_frames < 1) throw ContractError("lip sequence has no frames");
  if (height <= 0 || width <= 0)
    throw ContractError("lip frames must have positive size");
  if (pixels.size() != num_frames * FrameSize())
    throw ContractError("lip pixel buffer size mismatch");
  for (float v : pixels)
    if (!(v >= 0.0f && v <= 1.0f))
      throw ContractError("lip intensities must lie in [0, 1]");
}

LipSequence ReadLips(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open lip file " + path);
  char magic[4];
  is.read(magic, 4);
  if (is.gcount() != 4 || std::string(magic, 4) != "LIPS")
    throw FormatError(path + ": bad lip container magic");
  auto frames = ReadLe<std::uint32_t>(is, "frame count");
  auto height = ReadLe<std::uint16_t>(is, "height");
  auto width = ReadLe<std::uint16_t>(is, "width");
  ReadLe<std::uint32_t>(is, "reserved header word");
  if (frames == 0 || height == 0 || width == 0)
    throw FormatError(path + ": empty lip sequence");

  LipSequence lips(static_cast<int>(frames), height, width);
  std::vector<std::uint8_t> raw(lips.pixels.size());
  is.read(reinterpret_cast<char *>(raw.data()),
          static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(is.gcount()) != raw.size())
    throw FormatError(path + ": truncated lip payload");
  for (std::size_t i = 0; i < raw.size(); ++i)
    lips.pixels[i] = static_cast<float>(raw[i]) / 255.0f;
  return lips;
}

void WriteLips(const LipSequence &lips, const std::string &path) {
  lips.Validate();
  if (lips.height > 0xffff || lips.width > 0xffff)
    throw ContractError("lip frame too large for the container");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write lip file " + path);
  os.write("LIPS", 4);
  WriteLe<std::uint32_t>(os, static_cast<std::uint32_t>(lips.num_frames));
  WriteLe<std::uint16_t>(os, static_cast<std::uint16_t>(lips.height));
  WriteLe<std::uint16_t>(os, static_cast<std::uint16_t>(lips.width));
  WriteLe<std::uint32_t>(os, 0);
  std::vector<std::uint8_t> raw(lips.pixels.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    raw[i] = static_cast<std::uint8_t>(
        std::lround(std::clamp(lips.pixels[i], 0.0f, 1.0f) * 255.0f));
  os.write(reinterpret_cast<const char *>(raw.data()),
           static_cast<std::streamsize>(raw.size()));
  if (!os) throw IoError("failed writing " + path);
}

}  // namespace vcvts
