// src/media/mel-spectrogram.cc

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

#include "vcvts/media/mel-spectrogram.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "vcvts/base/error.h"

namespace vcvts {

void AnalysisConfig::Validate() const {
  if (sample_rate <= 0 || hop <= 0 || mel_bins <= 0)
    throw ContractError("analysis config: rates and sizes must be positive");
  if (!(hop <= window && window <= fft_size))
    throw ContractError("analysis config: need hop <= window <= fft_size");
  if (!(fmin >= 0.0 && fmin < fmax && fmax <= sample_rate / 2.0))
    throw ContractError("analysis config: need fmin < fmax <= sample_rate/2");
  if (!(f0_min > 0.0 && f0_min < f0_max))
    throw ContractError("analysis config: need 0 < f0_min < f0_max");
}

MelSpectrogram MelSpectrogram::Head(int t) const {
  if (t < 0 || t > NumFrames())
    throw ContractError("MelSpectrogram::Head out of range");
  MelSpectrogram out;
  out.frames = frames.topRows(t);
  out.frame_rate = frame_rate;
  return out;
}

void MelSpectrogram::Validate() const {
  if (!frames.allFinite())
    throw ContractError("mel spectrogram has non-finite values");
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

MelFilterbank::MelFilterbank(const AnalysisConfig &cfg) {
  cfg.Validate();
  const int num_bins = cfg.fft_size / 2 + 1;
  const int B = cfg.mel_bins;
  const double mel_lo = HzToMel(cfg.fmin), mel_hi = HzToMel(cfg.fmax);
  std::vector<double> edges(B + 2);
  for (int i = 0; i < B + 2; ++i)
    edges[i] = MelToHz(mel_lo + (mel_hi - mel_lo) * i / (B + 1));

  weights_ = Eigen::MatrixXd::Zero(B, num_bins);
  centers_hz_.resize(B);
  for (int m = 0; m < B; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    centers_hz_[m] = center;
    for (int k = 0; k < num_bins; ++k) {
      const double f = static_cast<double>(k) * cfg.sample_rate / cfg.fft_size;
      double w = 0.0;
      if (f > left && f <= center)
        w = (f - left) / (center - left);
      else if (f > center && f < right)
        w = (right - f) / (right - center);
      weights_(m, k) = w;
    }
  }
}

Eigen::MatrixXd MelFilterbank::PseudoInverse() const {
  return weights_.completeOrthogonalDecomposition().pseudoInverse();
}

std::vector<double> AnalysisWindow(const AnalysisConfig &cfg) {
  std::vector<double> win(cfg.fft_size, 0.0);
  const int offset = (cfg.fft_size - cfg.window) / 2;
  for (int n = 0; n < cfg.window; ++n)
    win[offset + n] =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / cfg.window);
  return win;
}

namespace {

// numpy-style "reflect" padding (edge sample not repeated), folded again for
// signals shorter than the pad.
std::vector<double> ReflectPad(std::span<const float> x, int pad) {
  const long n = static_cast<long>(x.size());
  if (n == 0) throw ContractError("cannot pad an empty signal");
  std::vector<double> out(n + 2 * pad);
  for (long i = 0; i < n + 2 * pad; ++i) {
    long j = i - pad;
    if (n == 1) {
      j = 0;
    } else {
      const long period = 2 * (n - 1);
      j = ((j % period) + period) % period;
      if (j >= n) j = period - j;
    }
    out[i] = x[j];
  }
  return out;
}

}  // namespace

SpectrumMatrix Stft(std::span<const float> samples, const AnalysisConfig &cfg) {
  cfg.Validate();
  const int n_fft = cfg.fft_size;
  const int T = static_cast<int>(samples.size()) / cfg.hop;
  const int num_bins = n_fft / 2 + 1;
  const std::vector<double> padded = ReflectPad(samples, n_fft / 2);
  const std::vector<double> win = AnalysisWindow(cfg);

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  SpectrumMatrix spec(T, num_bins);
  std::vector<double> frame(n_fft);
  std::vector<std::complex<double>> bins;
  for (int t = 0; t < T; ++t) {
    const int start = t * cfg.hop;
    for (int n = 0; n < n_fft; ++n) frame[n] = padded[start + n] * win[n];
    fft.fwd(bins, frame);
    for (int k = 0; k < num_bins; ++k) spec(t, k) = bins[k];
  }
  return spec;
}

std::vector<float> Istft(const SpectrumMatrix &spec, const AnalysisConfig &cfg) {
  const int n_fft = cfg.fft_size;
  const int T = static_cast<int>(spec.rows());
  const int num_bins = n_fft / 2 + 1;
  if (spec.cols() != num_bins) throw ContractError("Istft: wrong bin count");
  const std::vector<double> win = AnalysisWindow(cfg);
  const int total = (T - 1) * cfg.hop + n_fft;
  std::vector<double> acc(std::max(total, 0), 0.0), norm(acc.size(), 0.0);

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<std::complex<double>> bins(num_bins);
  std::vector<double> frame;
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < num_bins; ++k) bins[k] = spec(t, k);
    fft.inv(frame, bins, n_fft);
    const int start = t * cfg.hop;
    for (int n = 0; n < n_fft; ++n) {
      acc[start + n] += frame[n] * win[n];
      norm[start + n] += win[n] * win[n];
    }
  }
  std::vector<float> out(static_cast<std::size_t>(T) * cfg.hop, 0.0f);
  const int offset = n_fft / 2;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t j = i + offset;
    if (j < acc.size() && norm[j] > 1e-10)
      out[i] = static_cast<float>(acc[j] / norm[j]);
  }
  return out;
}

MelSpectrogram ComputeMelSpectrogram(const Waveform &wave,
                                     const AnalysisConfig &cfg) {
  cfg.Validate();
  wave.Validate();
  if (wave.sample_rate != cfg.sample_rate)
    throw ContractError("waveform rate " + std::to_string(wave.sample_rate) +
                        " differs from analysis rate " +
                        std::to_string(cfg.sample_rate));
  if (static_cast<int>(wave.size()) < cfg.window)
    throw ContractError("waveform shorter than one analysis window");

  const MelFilterbank fbank(cfg);
  const SpectrumMatrix spec = Stft(wave.samples, cfg);
  const Eigen::MatrixXd power = spec.cwiseAbs2();
  const Eigen::MatrixXd mel = power * fbank.Weights().transpose();

  MelSpectrogram out;
  out.frame_rate = cfg.FrameRate();
  out.frames = mel.array()
                   .max(cfg.log_floor)
                   .log()
                   .matrix()
                   .cast<float>();
  return out;
}

}  // namespace vcvts
