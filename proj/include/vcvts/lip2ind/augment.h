// include/vcvts/lip2ind/augment.h

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

#ifndef VCVTS_LIP2IND_AUGMENT_H_
#define VCVTS_LIP2IND_AUGMENT_H_

#include <cstdint>
#include <random>

#include <torch/types.h>

#include "vcvts/media/lip-sequence.h"

namespace vcvts {

struct AugmentConfig {
  int crop_size = 88;
  double horizontal_flip_prob = 0.5;
  double mixup_alpha = 0.4;
  bool enabled = true;
};

struct CropDecision {
  int y = 0;
  int x = 0;
  bool flip = false;
};

/// One crop offset and flip decision per clip.  Evaluation (or a disabled
/// config) gives the centered crop without flip.
CropDecision DrawCrop(int height, int width, const AugmentConfig &cfg, bool training,
                      std::mt19937_64 &rng);

/// The same crop window and optional horizontal flip applied to every frame.
LipSequence CropAndFlip(const LipSequence &lips, int size, const CropDecision &d);

LipSequence Augment(const LipSequence &lips, const AugmentConfig &cfg, bool training,
                    std::uint64_t seed);

/// Batched form over lips [K, L, H, W]; one decision per item.
torch::Tensor AugmentBatch(const torch::Tensor &lips, const AugmentConfig &cfg, bool training,
                           std::uint64_t seed);

/// lambda ~ Beta(alpha, alpha), sampled through two Gamma draws.
double SampleMixupLambda(double alpha, std::mt19937_64 &rng);

struct MixedPair {
  torch::Tensor lips;     // [L, H, W] or [K, L, H, W]
  torch::Tensor targets;  // [T2, N] soft targets, rows stochastic
};

/// lambda * a + (1 - lambda) * b on pixels and targets.
MixedPair MixupPair(const torch::Tensor &lips_a, const torch::Tensor &targets_a,
                    const torch::Tensor &lips_b, const torch::Tensor &targets_b, double lambda);

/// Pairs every item with a seeded random partner, one lambda per item.
/// lips [K, L, H, W], targets [K, T2, N].
MixedPair MixupBatch(const torch::Tensor &lips, const torch::Tensor &targets, double alpha,
                     std::uint64_t seed);

}  // namespace vcvts

#endif  // VCVTS_LIP2IND_AUGMENT_H_
