// src/metrics/distortion.cc

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

#include "vcvts/metrics/distortion.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vcvts/base/error.h"

namespace vcvts {

namespace {

struct Cell {
  double cost = std::numeric_limits<double>::infinity();
  int length = 0;
};

bool Better(const Cell &a, const Cell &b) {
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.length < b.length;
}

// Log F0 mismatch between a voiced and an unvoiced frame.
constexpr double kVoicingPenalty = 1.0;

}  // namespace

DtwPath Dtw(int n, int m, const std::function<double(int, int)> &local_cost) {
  if (n <= 0 || m <= 0) throw ContractError("DTW of an empty sequence");
  std::vector<Cell> acc(static_cast<std::size_t>(n) * m);
  auto at = [&](int i, int j) -> Cell & {
    return acc[static_cast<std::size_t>(i) * m + j];
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double c = local_cost(i, j);
      Cell best;
      if (i == 0 && j == 0) {
        best = {0.0, 0};
      } else {
        if (i > 0 && j > 0) best = at(i - 1, j - 1);
        if (i > 0 && Better(at(i - 1, j), best)) best = at(i - 1, j);
        if (j > 0 && Better(at(i, j - 1), best)) best = at(i, j - 1);
      }
      at(i, j) = {best.cost + c, best.length + 1};
    }
  }

  DtwPath path;
  path.cost = at(n - 1, m - 1).cost;
  int i = n - 1, j = m - 1;
  path.pairs.emplace_back(i, j);
  while (i > 0 || j > 0) {
    int bi = -1, bj = -1;
    Cell best;
    auto consider = [&](int pi, int pj) {
      if (pi < 0 || pj < 0) return;
      if (bi < 0 || Better(at(pi, pj), best)) {
        best = at(pi, pj);
        bi = pi;
        bj = pj;
      }
    };
    consider(i - 1, j - 1);
    consider(i - 1, j);
    consider(i, j - 1);
    i = bi;
    j = bj;
    path.pairs.emplace_back(i, j);
  }
  std::reverse(path.pairs.begin(), path.pairs.end());
  return path;
}

FrameMatrix MelCepstra(const MelSpectrogram &mel, int order) {
  const int bins = mel.NumBins();
  if (order < 1 || order >= bins) throw ContractError("bad cepstral order");
  FrameMatrix basis(bins, order);
  const double scale = std::sqrt(2.0 / bins);
  for (int b = 0; b < bins; ++b)
    for (int k = 1; k <= order; ++k)
      basis(b, k - 1) = static_cast<float>(
          scale * std::cos(std::numbers::pi * k * (b + 0.5) / bins));
  return mel.frames * basis;
}

double McdFromCepstra(const FrameMatrix &a, const FrameMatrix &b) {
  if (a.rows() == 0 || b.rows() == 0) throw ContractError("MCD of empty input");
  if (a.cols() != b.cols()) throw ContractError("MCD: cepstral orders differ");
  auto dist = [&](int i, int j) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const double d = static_cast<double>(a(i, k)) - b(j, k);
      acc += d * d;
    }
    return std::sqrt(acc);
  };
  const DtwPath path =
      Dtw(static_cast<int>(a.rows()), static_cast<int>(b.rows()), dist);
  return kMcdScale * path.cost / static_cast<double>(path.pairs.size());
}

double Mcd(const Waveform &reference, const Waveform &degraded,
           const AnalysisConfig &cfg) {
  if (reference.samples.empty() || degraded.samples.empty())
    throw ContractError("MCD of empty waveform");
  return McdFromCepstra(MelCepstra(ComputeMelSpectrogram(reference, cfg)),
                        MelCepstra(ComputeMelSpectrogram(degraded, cfg)));
}

F0RmseResult F0Rmse(const PitchContour &reference, const PitchContour &degraded) {
  reference.Validate();
  degraded.Validate();
  if (reference.frame_rate != degraded.frame_rate)
    throw ContractError("F0-RMSE: frame rates differ");
  if (reference.size() == 0 || degraded.size() == 0)
    throw ContractError("F0-RMSE of empty contour");
  auto cost = [&](int i, int j) {
    const bool vi = reference.voiced[i], vj = degraded.voiced[j];
    if (vi && vj)
      return std::abs(std::log(static_cast<double>(reference.values[i])) -
                      std::log(static_cast<double>(degraded.values[j])));
    return vi == vj ? 0.0 : kVoicingPenalty;
  };
  const DtwPath path = Dtw(reference.size(), degraded.size(), cost);
  double acc = 0.0;
  int count = 0;
  for (const auto &[i, j] : path.pairs) {
    if (!reference.voiced[i] || !degraded.voiced[j]) continue;
    const double d = static_cast<double>(reference.values[i]) - degraded.values[j];
    acc += d * d;
    ++count;
  }
  if (count == 0) throw ContractError("F0-RMSE: no co-voiced frames");
  return {std::sqrt(acc / count), count};
}

}  // namespace vcvts
