// src/media/griffin-lim.cc

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

#include "vcvts/media/griffin-lim.h"

#include <cmath>
#include <numbers>
#include <random>

#include "vcvts/base/error.h"

namespace vcvts {

Waveform GriffinLim(const MelSpectrogram &mel, const AnalysisConfig &cfg) {
  cfg.Validate();
  mel.Validate();
  if (mel.NumBins() != cfg.mel_bins)
    throw ContractError("GriffinLim: mel bin count does not match config");
  const int T = mel.NumFrames();
  if (T < 1) throw ContractError("GriffinLim: empty spectrogram");

  const MelFilterbank fbank(cfg);
  // Values at the log floor carry no energy.
  const Eigen::MatrixXd mel_power =
      (mel.frames.cast<double>().array().exp() - cfg.log_floor).max(0.0);
  const Eigen::MatrixXd linear_power =
      (mel_power * fbank.PseudoInverse().transpose()).array().max(0.0);
  const Eigen::MatrixXd magnitude = linear_power.array().sqrt();

  std::mt19937_64 rng(cfg.gl_seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  SpectrumMatrix spec(T, magnitude.cols());
  for (int t = 0; t < T; ++t)
    for (int k = 0; k < magnitude.cols(); ++k)
      spec(t, k) = std::polar(magnitude(t, k), phase(rng));

  Waveform out;
  out.sample_rate = cfg.sample_rate;
  out.samples = Istft(spec, cfg);
  for (int it = 0; it < cfg.gl_iterations; ++it) {
    const SpectrumMatrix rebuilt = Stft(out.samples, cfg);
    for (int t = 0; t < T; ++t) {
      for (int k = 0; k < magnitude.cols(); ++k) {
        const double mag = std::abs(rebuilt(t, k));
        spec(t, k) = mag > 1e-12 ? rebuilt(t, k) * (magnitude(t, k) / mag)
                                 : std::complex<double>(magnitude(t, k), 0.0);
      }
    }
    out.samples = Istft(spec, cfg);
  }
  return out;
}

}  // namespace vcvts
