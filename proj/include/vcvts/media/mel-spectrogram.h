// include/vcvts/media/mel-spectrogram.h

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

#ifndef VCVTS_MEDIA_MEL_SPECTROGRAM_H_
#define VCVTS_MEDIA_MEL_SPECTROGRAM_H_

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "vcvts/media/analysis-config.h"
#include "vcvts/media/waveform.h"

namespace vcvts {

using FrameMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SpectrumMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                     Eigen::Dynamic, Eigen::RowMajor>;

/// T x B log-mel energies at 1 / hop frames per second.
struct MelSpectrogram {
  FrameMatrix frames;
  double frame_rate = 100.0;

  int NumFrames() const { return static_cast<int>(frames.rows()); }
  int NumBins() const { return static_cast<int>(frames.cols()); }
  /// First `t` frames.
  MelSpectrogram Head(int t) const;
  void Validate() const;
};

double HzToMel(double hz);
double MelToHz(double mel);

/// Triangular HTK-scale filters over the fft_size/2 + 1 power bins.
class MelFilterbank {
 public:
  explicit MelFilterbank(const AnalysisConfig &cfg);

  /// mel_bins x (fft_size/2 + 1).
  const Eigen::MatrixXd &Weights() const { return weights_; }
  /// Moore-Penrose pseudo-inverse of Weights(), (fft_size/2 + 1) x mel_bins.
  Eigen::MatrixXd PseudoInverse() const;
  double CenterHz(int bin) const { return centers_hz_[bin]; }
  int NumBins() const { return static_cast<int>(centers_hz_.size()); }

 private:
  Eigen::MatrixXd weights_;
  std::vector<double> centers_hz_;
};

/// Periodic Hann window of `cfg.window` samples, zero-padded (centered) to
/// fft_size.
std::vector<double> AnalysisWindow(const AnalysisConfig &cfg);

/// Centered STFT with reflective padding; floor(|samples| / hop) frames.
SpectrumMatrix Stft(std::span<const float> samples, const AnalysisConfig &cfg);

/// Weighted overlap-add inverse of Stft; returns frames * hop samples.
std::vector<float> Istft(const SpectrumMatrix &spec, const AnalysisConfig &cfg);

MelSpectrogram ComputeMelSpectrogram(const Waveform &wave,
                                     const AnalysisConfig &cfg);

}  // namespace vcvts

#endif  // VCVTS_MEDIA_MEL_SPECTROGRAM_H_
