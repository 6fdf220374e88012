// src/media/waveform.cc

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

#include "vcvts/media/waveform.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>

#include "vcvts/base/binary-io.h"
#include "vcvts/base/error.h"

namespace vcvts {

void Waveform::Validate() const {
  if (sample_rate <= 0)
    throw ContractError("waveform sample rate must be positive");
  if (samples.empty()) throw ContractError("waveform is empty");
  for (float s : samples)
    if (!std::isfinite(s)) throw ContractError("waveform has non-finite samples");
}

namespace {

std::string ReadTag(std::istream &is) {
  char tag[4];
  is.read(tag, 4);
  if (is.gcount() != 4) return {};
  return std::string(tag, 4);
}

}  // namespace

Waveform ReadWav(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open WAV file " + path);

  if (ReadTag(is) != "RIFF") throw FormatError(path + ": not a RIFF file");
  ReadLe<std::uint32_t>(is, "RIFF size");
  if (ReadTag(is) != "WAVE") throw FormatError(path + ": not a WAVE file");

  bool have_fmt = false;
  std::uint16_t channels = 0, bits = 0;
  std::uint32_t rate = 0;
  while (true) {
    std::string tag = ReadTag(is);
    if (tag.empty()) throw FormatError(path + ": no data chunk");
    std::uint32_t chunk_size = ReadLe<std::uint32_t>(is, "chunk size");
    if (tag == "fmt ") {
      if (chunk_size < 16) throw FormatError(path + ": short fmt chunk");
      std::uint16_t format = ReadLe<std::uint16_t>(is, "audio format");
      channels = ReadLe<std::uint16_t>(is, "channel count");
      rate = ReadLe<std::uint32_t>(is, "sample rate");
      ReadLe<std::uint32_t>(is, "byte rate");
      ReadLe<std::uint16_t>(is, "block align");
      bits = ReadLe<std::uint16_t>(is, "bits per sample");
      is.seekg(chunk_size - 16 + (chunk_size & 1), std::ios::cur);
      if (format != 1 || bits != 16)
        throw FormatError(path + ": only 16-bit PCM is supported");
      if (channels != 1)
        throw FormatError(path + ": expected mono audio, got " +
                          std::to_string(channels) + " channels");
      have_fmt = true;
    } else if (tag == "data") {
      if (!have_fmt) throw FormatError(path + ": data chunk before fmt chunk");
      std::size_t count = chunk_size / 2;
      if (count == 0) throw FormatError(path + ": empty audio");
      std::vector<std::int16_t> pcm(count);
      is.read(reinterpret_cast<char *>(pcm.data()),
              static_cast<std::streamsize>(count * 2));
      if (static_cast<std::size_t>(is.gcount()) != count * 2)
        throw FormatError(path + ": truncated data chunk");
      Waveform wave;
      wave.sample_rate = static_cast<int>(rate);
      wave.samples.resize(count);
      for (std::size_t i = 0; i < count; ++i)
        wave.samples[i] = static_cast<float>(pcm[i]) / 32768.0f;
      return wave;
    } else {
      is.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
    }
  }
}

Waveform LoadWaveform(const std::string &path, int target_rate) {
  Waveform wave = ReadWav(path);
  if (wave.sample_rate != target_rate) wave = Resample(wave, target_rate);
  return wave;
}

void WriteWav(const Waveform &wave, const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write WAV file " + path);
  const auto data_bytes = static_cast<std::uint32_t>(wave.samples.size() * 2);
  os.write("RIFF", 4);
  WriteLe<std::uint32_t>(os, 36 + data_bytes);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  WriteLe<std::uint32_t>(os, 16);
  WriteLe<std::uint16_t>(os, 1);
  WriteLe<std::uint16_t>(os, 1);
  WriteLe<std::uint32_t>(os, static_cast<std::uint32_t>(wave.sample_rate));
  WriteLe<std::uint32_t>(os, static_cast<std::uint32_t>(wave.sample_rate) * 2);
  WriteLe<std::uint16_t>(os, 2);
  WriteLe<std::uint16_t>(os, 16);
  os.write("data", 4);
  WriteLe<std::uint32_t>(os, data_bytes);
  for (float s : wave.samples) {
    float clipped = std::clamp(s, -1.0f, 1.0f);
    auto v = static_cast<std::int16_t>(
        std::clamp(std::lround(clipped * 32768.0f), -32768L, 32767L));
    WriteLe<std::int16_t>(os, v);
  }
  if (!os) throw IoError("failed writing " + path);
}

std::vector<float> Resample(std::span<const float> input, int from_rate,
                            int to_rate) {
  if (from_rate <= 0 || to_rate <= 0)
    throw ContractError("sample rates must be positive");
  if (from_rate == to_rate) return {input.begin(), input.end()};

  const double ratio = static_cast<double>(to_rate) / from_rate;
  const auto out_len = static_cast<std::size_t>(
      std::llround(static_cast<double>(input.size()) * ratio));
  // Cutoff relative to the input Nyquist; a little below the lower of the
  // two Nyquist rates so the Hann-windowed kernel's transition band fits.
  const double cutoff = 0.95 * std::min(1.0, ratio);
  constexpr int kZeroCrossings = 16;
  const double half_width = kZeroCrossings / cutoff;

  std::vector<float> out(out_len, 0.0f);
  const auto n_in = static_cast<long>(input.size());
  for (std::size_t n = 0; n < out_len; ++n) {
    const double t = static_cast<double>(n) / ratio;
    long k_lo = static_cast<long>(std::ceil(t - half_width));
    long k_hi = static_cast<long>(std::floor(t + half_width));
    k_lo = std::max(k_lo, 0L);
    k_hi = std::min(k_hi, n_in - 1);
    double acc = 0.0;
    for (long k = k_lo; k <= k_hi; ++k) {
      const double x = t - static_cast<double>(k);
      const double arg = cutoff * x;
      const double sinc =
          arg == 0.0 ? 1.0
                     : std::sin(std::numbers::pi * arg) / (std::numbers::pi * arg);
      const double win = 0.5 + 0.5 * std::cos(std::numbers::pi * x / half_width);
      acc += input[static_cast<std::size_t>(k)] * cutoff * sinc * win;
    }
    out[n] = static_cast<float>(acc);
  }
  return out;
}

Waveform Resample(const Waveform &wave, int to_rate) {
  Waveform out;
  out.sample_rate = to_rate;
  out.samples = Resample(wave.samples, wave.sample_rate, to_rate);
  return out;
}

}  // namespace vcvts
