// src/lip2ind/augment.cc

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

#include "vcvts/lip2ind/augment.h"

#include <algorithm>
#include <numeric>

#include <torch/torch.h>

#include "vcvts/base/error.h"

namespace vcvts {

CropDecision DrawCrop(int height, int width, const AugmentConfig &cfg, bool training,
                      std::mt19937_64 &rng) {
  if (cfg.crop_size > height || cfg.crop_size > width)
    throw ContractError("crop " + std::to_string(cfg.crop_size) + " exceeds lip frames of " +
                        std::to_string(height) + "x" + std::to_string(width));
  CropDecision d;
  if (!training || !cfg.enabled) {
    d.y = (height - cfg.crop_size) / 2;
    d.x = (width - cfg.crop_size) / 2;
    return d;
  }
  std::uniform_int_distribution<int> oy(0, height - cfg.crop_size), ox(0, width - cfg.crop_size);
  std::bernoulli_distribution flip(cfg.horizontal_flip_prob);
  d.y = oy(rng);
  d.x = ox(rng);
  d.flip = flip(rng);
  return d;
}

LipSequence CropAndFlip(const LipSequence &lips, int size, const CropDecision &d) {
  if (d.y < 0 || d.x < 0 || d.y + size > lips.height || d.x + size > lips.width)
    throw ContractError("crop window outside the lip frame");
  LipSequence out(lips.num_frames, size, size);
  out.frame_rate = lips.frame_rate;
  for (int l = 0; l < lips.num_frames; ++l)
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x)
        out.at(l, y, d.flip ? size - 1 - x : x) = lips.at(l, d.y + y, d.x + x);
  return out;
}

LipSequence Augment(const LipSequence &lips, const AugmentConfig &cfg, bool training,
                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return CropAndFlip(lips, cfg.crop_size, DrawCrop(lips.height, lips.width, cfg, training, rng));
}

torch::Tensor AugmentBatch(const torch::Tensor &lips, const AugmentConfig &cfg, bool training,
                           std::uint64_t seed) {
  if (lips.dim() != 4) throw ContractError("augment: expected [K, L, H, W]");
  std::mt19937_64 rng(seed);
  const int H = static_cast<int>(lips.size(2)), W = static_cast<int>(lips.size(3));
  std::vector<torch::Tensor> items;
  for (int64_t k = 0; k < lips.size(0); ++k) {
    const CropDecision d = DrawCrop(H, W, cfg, training, rng);
    auto c = lips[k].narrow(1, d.y, cfg.crop_size).narrow(2, d.x, cfg.crop_size);
    if (d.flip) c = c.flip({2});
    items.push_back(c);
  }
  return torch::stack(items).contiguous();
}

double SampleMixupLambda(double alpha, std::mt19937_64 &rng) {
  if (alpha <= 0.0) throw ContractError("mixup alpha must be positive");
  std::gamma_distribution<double> g(alpha, 1.0);
  const double a = g(rng), b = g(rng);
  return a + b > 0.0 ? a / (a + b) : 0.5;
}

MixedPair MixupPair(const torch::Tensor &lips_a, const torch::Tensor &targets_a,
                    const torch::Tensor &lips_b, const torch::Tensor &targets_b, double lambda) {
  if (lips_a.sizes() != lips_b.sizes() || targets_a.sizes() != targets_b.sizes())
    throw ContractError("mixup: pair lengths differ");
  if (lambda == 1.0) return {lips_a.clone(), targets_a.clone()};
  return {lambda * lips_a + (1.0 - lambda) * lips_b,
          lambda * targets_a + (1.0 - lambda) * targets_b};
}

MixedPair MixupBatch(const torch::Tensor &lips, const torch::Tensor &targets, double alpha,
                     std::uint64_t seed) {
  if (lips.dim() != 4 || targets.dim() != 3 || lips.size(0) != targets.size(0))
    throw ContractError("mixup: expected lips [K, L, H, W] and targets [K, T2, N]");
  std::mt19937_64 rng(seed);
  const int64_t K = lips.size(0);
  std::vector<int64_t> perm(K);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> lam(K);
  for (auto &l : lam) l = SampleMixupLambda(alpha, rng);
  const auto p = torch::tensor(perm, torch::kInt64);
  const auto lt = torch::tensor(lam, torch::kDouble).to(lips.dtype());
  const auto lw = lt.view({K, 1, 1, 1});
  const auto tw = lt.to(targets.dtype()).view({K, 1, 1});
  return {lw * lips + (1.0 - lw) * lips.index_select(0, p),
          tw * targets + (1.0 - tw) * targets.index_select(0, p)};
}

}  // namespace vcvts
