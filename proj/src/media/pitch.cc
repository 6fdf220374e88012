// src/media/pitch.cc

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

#include "vcvts/media/pitch.h"

#include <algorithm>
#include <cmath>

#include "vcvts/base/error.h"

namespace vcvts {

int PitchContour::NumVoiced() const {
  return static_cast<int>(std::count(voiced.begin(), voiced.end(), 1));
}

PitchContour PitchContour::Head(int t) const {
  if (t < 0 || t > size()) throw ContractError("PitchContour::Head out of range");
  PitchContour out;
  out.frame_rate = frame_rate;
  out.values.assign(values.begin(), values.begin() + t);
  out.voiced.assign(voiced.begin(), voiced.begin() + t);
  return out;
}

void PitchContour::Validate() const {
  if (values.size() != voiced.size())
    throw ContractError("pitch contour value/voicing length mismatch");
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (!std::isfinite(values[t]))
      throw ContractError("pitch contour has non-finite values");
    if ((values[t] != 0.0f) != (voiced[t] != 0))
      throw ContractError("pitch contour: value must be 0 iff unvoiced");
  }
}

PitchContour ExtractF0(const Waveform &wave, const AnalysisConfig &cfg) {
  cfg.Validate();
  if (wave.samples.empty()) throw ContractError("cannot extract F0 of empty audio");
  wave.Validate();
  if (static_cast<int>(wave.size()) < cfg.window)
    throw ContractError("waveform shorter than one analysis window");

  const int fs = wave.sample_rate;
  const int W = cfg.window;
  const int lag_min = std::max(2, static_cast<int>(std::floor(fs / cfg.f0_max)));
  const int lag_max = static_cast<int>(std::ceil(fs / cfg.f0_min));
  const int T = static_cast<int>(wave.size()) / cfg.hop;
  const long n = static_cast<long>(wave.size());
  auto sample = [&](long i) -> double {
    return (i >= 0 && i < n) ? wave.samples[i] : 0.0;
  };

  PitchContour out;
  out.frame_rate = static_cast<double>(fs) / cfg.hop;
  out.values.assign(T, 0.0f);
  out.voiced.assign(T, 0);

  std::vector<double> seg(W + lag_max + 1);
  std::vector<double> nccf(lag_max + 2, 0.0);
  for (int t = 0; t < T; ++t) {
    const long start = static_cast<long>(t) * cfg.hop - W / 2;
    for (int i = 0; i < static_cast<int>(seg.size()); ++i) seg[i] = sample(start + i);

    double e0 = 0.0;
    for (int i = 0; i < W; ++i) e0 += seg[i] * seg[i];
    if (e0 < 1e-10 * W) continue;

    // Sliding energy of the lagged window.
    double e_lag = 0.0;
    for (int i = lag_min; i < lag_min + W; ++i) e_lag += seg[i] * seg[i];
    double best = -1.0;
    for (int lag = lag_min; lag <= lag_max; ++lag) {
      if (lag > lag_min) {
        e_lag += seg[lag + W - 1] * seg[lag + W - 1] -
                 seg[lag - 1] * seg[lag - 1];
      }
      double cross = 0.0;
      for (int i = 0; i < W; ++i) cross += seg[i] * seg[i + lag];
      const double denom = std::sqrt(e0 * std::max(e_lag, 1e-20));
      nccf[lag] = cross / denom;
      best = std::max(best, nccf[lag]);
    }
    if (best < cfg.voicing_threshold) continue;

    // Smallest-lag local peak close to the global maximum; this avoids
    // picking multiples of the true period.
    int chosen = -1;
    for (int lag = lag_min; lag <= lag_max; ++lag) {
      const double left = lag > lag_min ? nccf[lag - 1] : -1.0;
      const double right = lag < lag_max ? nccf[lag + 1] : -1.0;
      if (nccf[lag] >= 0.9 * best && nccf[lag] >= left && nccf[lag] >= right) {
        chosen = lag;
        break;
      }
    }
    double period = chosen;
    if (chosen > lag_min && chosen < lag_max) {
      const double a = nccf[chosen - 1], b = nccf[chosen], c = nccf[chosen + 1];
      const double denom = a - 2.0 * b + c;
      if (denom < 0.0) period += std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
    }
    const double f0 = std::clamp(fs / period, cfg.f0_min, cfg.f0_max);
    out.values[t] = static_cast<float>(f0);
    out.voiced[t] = 1;
  }
  return out;
}

PitchContour PoolF0ToUnitRate(const PitchContour &contour) {
  contour.Validate();
  if (contour.size() % 2 != 0)
    throw ContractError("F0 contour length must be even before pooling");
  PitchContour out;
  out.frame_rate = contour.frame_rate / 2.0;
  const int n = contour.size() / 2;
  out.values.assign(n, 0.0f);
  out.voiced.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    int count = 0;
    for (int j = 2 * i; j < 2 * i + 2; ++j) {
      if (contour.voiced[j]) {
        sum += contour.values[j];
        ++count;
      }
    }
    if (count > 0) {
      out.values[i] = static_cast<float>(sum / count);
      out.voiced[i] = 1;
    }
  }
  return out;
}

LogF0Stats ComputeLogF0Stats(const PitchContour &contour) {
  double sum = 0.0, sum_sq = 0.0;
  int count = 0;
  for (int t = 0; t < contour.size(); ++t) {
    if (!contour.voiced[t]) continue;
    const double lf = std::log(static_cast<double>(contour.values[t]));
    sum += lf;
    sum_sq += lf * lf;
    ++count;
  }
  LogF0Stats stats;
  if (count == 0) return stats;
  const double mean = sum / count;
  const double var = std::max(sum_sq / count - mean * mean, 0.0);
  stats.mean = static_cast<float>(mean);
  // A floor keeps near-monotone contours from blowing up the normalization.
  stats.stddev = static_cast<float>(std::max(std::sqrt(var), 0.02));
  return stats;
}

std::vector<float> NormalizeLogF0(const PitchContour &contour,
                                  const LogF0Stats &stats) {
  std::vector<float> out(contour.size(), 0.0f);
  for (int t = 0; t < contour.size(); ++t)
    if (contour.voiced[t])
      out[t] = (std::log(contour.values[t]) - stats.mean) / stats.stddev;
  return out;
}

PitchContour DenormalizeLogF0(const std::vector<float> &normalized,
                              const std::vector<std::uint8_t> &voiced,
                              const LogF0Stats &stats, double frame_rate) {
  if (normalized.size() != voiced.size())
    throw ContractError("DenormalizeLogF0: length mismatch");
  PitchContour out;
  out.frame_rate = frame_rate;
  out.values.assign(normalized.size(), 0.0f);
  out.voiced = voiced;
  for (std::size_t t = 0; t < normalized.size(); ++t)
    if (voiced[t])
      out.values[t] = std::exp(normalized[t] * stats.stddev + stats.mean);
  return out;
}

}  // namespace vcvts
