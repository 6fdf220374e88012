// src/metrics/intelligibility.cc

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

#include "vcvts/metrics/intelligibility.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "vcvts/base/error.h"

namespace vcvts {

namespace {

constexpr int kRate = 10000;
constexpr int kFrameLen = 256;
constexpr int kHop = kFrameLen / 2;
constexpr int kFftSize = 512;
constexpr int kNumBands = 15;
constexpr double kMinFreq = 150.0;
constexpr int kSegmentFrames = 30;
constexpr double kBetaDb = -15.0;
constexpr double kDynamicRangeDb = 40.0;
constexpr double kEps = 1e-12;

using Matrix = Eigen::MatrixXd;

// Hann window of length N without its zero endpoints (hanning(N + 2)[1:-1]).
std::vector<double> TrimmedHann(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (i + 1) / (n + 1));
  return w;
}

// Drops frames whose reference energy is more than kDynamicRangeDb below the
// loudest frame and re-synthesizes both signals by overlap-add.
void RemoveSilentFrames(std::vector<double> &x, std::vector<double> &y) {
  const std::vector<double> win = TrimmedHann(kFrameLen);
  const int n = static_cast<int>(std::min(x.size(), y.size()));
  std::vector<int> starts;
  for (int s = 0; s < n - kFrameLen; s += kHop) starts.push_back(s);
  if (starts.empty()) throw ContractError("signal shorter than one STOI frame");

  std::vector<double> energy(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) {
    double acc = 0.0;
    for (int k = 0; k < kFrameLen; ++k) {
      const double v = win[k] * x[starts[i] + k];
      acc += v * v;
    }
    energy[i] = 20.0 * std::log10(std::sqrt(acc) + 1e-16);
  }
  const double top = *std::max_element(energy.begin(), energy.end());
  std::vector<int> kept;
  for (std::size_t i = 0; i < starts.size(); ++i)
    if (energy[i] > top - kDynamicRangeDb) kept.push_back(starts[i]);

  const std::size_t out_len = (kept.size() - 1) * kHop + kFrameLen;
  std::vector<double> xs(out_len, 0.0), ys(out_len, 0.0);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (int k = 0; k < kFrameLen; ++k) {
      xs[i * kHop + k] += win[k] * x[kept[i] + k];
      ys[i * kHop + k] += win[k] * y[kept[i] + k];
    }
  }
  x = std::move(xs);
  y = std::move(ys);
}

// One-third-octave band envelopes: kNumBands x frames.
Matrix BandEnvelopes(const std::vector<double> &x) {
  const std::vector<double> win = TrimmedHann(kFrameLen);
  const int num_bins = kFftSize / 2 + 1;
  std::vector<std::pair<int, int>> bands(kNumBands);
  for (int b = 0; b < kNumBands; ++b) {
    const double lo = kMinFreq * std::pow(2.0, (2.0 * b - 1.0) / 6.0);
    const double hi = kMinFreq * std::pow(2.0, (2.0 * b + 1.0) / 6.0);
    auto nearest = [&](double f) {
      int best = 0;
      double best_d = 1e300;
      for (int k = 0; k < num_bins; ++k) {
        const double d = std::abs(static_cast<double>(k) * kRate / kFftSize - f);
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      return best;
    };
    bands[b] = {nearest(lo), nearest(hi)};
  }

  std::vector<int> starts;
  for (int s = 0; s < static_cast<int>(x.size()) - kFrameLen; s += kHop)
    starts.push_back(s);
  Matrix env(kNumBands, static_cast<Eigen::Index>(starts.size()));
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> frame(kFftSize);
  std::vector<std::complex<double>> spec;
  for (std::size_t f = 0; f < starts.size(); ++f) {
    std::fill(frame.begin(), frame.end(), 0.0);
    for (int k = 0; k < kFrameLen; ++k) frame[k] = win[k] * x[starts[f] + k];
    fft.fwd(spec, frame);
    for (int b = 0; b < kNumBands; ++b) {
      double acc = 0.0;
      for (int k = bands[b].first; k < bands[b].second; ++k) acc += std::norm(spec[k]);
      env(b, static_cast<Eigen::Index>(f)) = std::sqrt(acc);
    }
  }
  return env;
}

struct Envelopes {
  Matrix clean;
  Matrix degraded;
};

Envelopes Prepare(const Waveform &reference, const Waveform &degraded) {
  reference.Validate();
  degraded.Validate();
  if (reference.sample_rate != degraded.sample_rate)
    throw ContractError("STOI: sample rates differ");
  auto to_double = [](const Waveform &w) {
    std::vector<float> r = w.sample_rate == kRate
                               ? w.samples
                               : Resample(w.samples, w.sample_rate, kRate);
    return std::vector<double>(r.begin(), r.end());
  };
  std::vector<double> x = to_double(reference), y = to_double(degraded);
  const std::size_t n = std::min(x.size(), y.size());
  x.resize(n);
  y.resize(n);
  RemoveSilentFrames(x, y);
  Envelopes env{BandEnvelopes(x), BandEnvelopes(y)};
  if (env.clean.cols() < kSegmentFrames)
    throw ContractError("STOI needs at least 384 ms of non-silent speech");
  return env;
}

double RowCorrelation(Eigen::VectorXd a, Eigen::VectorXd b) {
  a.array() -= a.mean();
  b.array() -= b.mean();
  return a.dot(b) / (a.norm() * b.norm() + kEps);
}

}  // namespace

double Stoi(const Waveform &reference, const Waveform &degraded) {
  const Envelopes env = Prepare(reference, degraded);
  const double clip = std::pow(10.0, -kBetaDb / 20.0);
  const Eigen::Index frames = env.clean.cols();
  double total = 0.0;
  long count = 0;
  for (Eigen::Index m = kSegmentFrames; m <= frames; ++m) {
    const Matrix xs = env.clean.middleCols(m - kSegmentFrames, kSegmentFrames);
    const Matrix ys = env.degraded.middleCols(m - kSegmentFrames, kSegmentFrames);
    for (int b = 0; b < kNumBands; ++b) {
      Eigen::VectorXd xr = xs.row(b).transpose();
      Eigen::VectorXd yr = ys.row(b).transpose();
      const double alpha = xr.norm() / (yr.norm() + kEps);
      yr = (yr * alpha).cwiseMin(xr * (1.0 + clip));
      total += RowCorrelation(xr, yr);
      ++count;
    }
  }
  return total / count;
}

double Estoi(const Waveform &reference, const Waveform &degraded) {
  const Envelopes env = Prepare(reference, degraded);
  const Eigen::Index frames = env.clean.cols();
  auto normalize = [](Matrix s) {
    for (Eigen::Index r = 0; r < s.rows(); ++r) {
      s.row(r).array() -= s.row(r).mean();
      s.row(r) /= s.row(r).norm() + kEps;
    }
    for (Eigen::Index c = 0; c < s.cols(); ++c) {
      s.col(c).array() -= s.col(c).mean();
      s.col(c) /= s.col(c).norm() + kEps;
    }
    return s;
  };
  double total = 0.0;
  long segments = 0;
  for (Eigen::Index m = kSegmentFrames; m <= frames; ++m) {
    const Matrix xs =
        normalize(env.clean.middleCols(m - kSegmentFrames, kSegmentFrames));
    const Matrix ys =
        normalize(env.degraded.middleCols(m - kSegmentFrames, kSegmentFrames));
    total += xs.cwiseProduct(ys).sum() / kSegmentFrames;
    ++segments;
  }
  return total / segments;
}

}  // namespace vcvts
