// src/lip2ind/lip2ind-model.cc

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

#include "vcvts/lip2ind/lip2ind-model.h"

#include <cmath>

#include <torch/torch.h>

#include "vcvts/base/error.h"

namespace vcvts {

namespace nn = torch::nn;

int Lip2IndConfig::StemChannels() const {
  return static_cast<int>(std::lround(64 * width_multiplier));
}

int Lip2IndConfig::TrunkChannels() const { return 8 * StemChannels(); }

void Lip2IndConfig::Validate() const {
  if (num_codes < 2) throw ContractError("lip2ind: num_codes must be at least 2");
  if (StemChannels() < 1) throw ContractError("lip2ind: width multiplier too small");
  if (tcn_layers < 1) throw ContractError("lip2ind: need at least one temporal layer");
  if (dropout < 0.0 || dropout >= 1.0) throw ContractError("lip2ind: dropout out of [0, 1)");
  if (augment.crop_size < 8) throw ContractError("lip2ind: crop size too small");
}

void to_json(nlohmann::json &j, const AugmentConfig &c) {
  j = {{"crop_size", c.crop_size},
       {"horizontal_flip_prob", c.horizontal_flip_prob},
       {"mixup_alpha", c.mixup_alpha},
       {"enabled", c.enabled}};
}

void from_json(const nlohmann::json &j, AugmentConfig &c) {
  c.crop_size = j.value("crop_size", c.crop_size);
  c.horizontal_flip_prob = j.value("horizontal_flip_prob", c.horizontal_flip_prob);
  c.mixup_alpha = j.value("mixup_alpha", c.mixup_alpha);
  c.enabled = j.value("enabled", c.enabled);
}

void to_json(nlohmann::json &j, const Lip2IndConfig &c) {
  j = {{"num_codes", c.num_codes},
       {"width_multiplier", c.width_multiplier},
       {"tcn_layers", c.tcn_layers},
       {"dropout", c.dropout},
       {"augment", c.augment}};
}

void from_json(const nlohmann::json &j, Lip2IndConfig &c) {
  c.num_codes = j.value("num_codes", c.num_codes);
  c.width_multiplier = j.value("width_multiplier", c.width_multiplier);
  c.tcn_layers = j.value("tcn_layers", c.tcn_layers);
  c.dropout = j.value("dropout", c.dropout);
  if (j.contains("augment")) c.augment = j.at("augment").get<AugmentConfig>();
  c.Validate();
}

BasicBlockImpl::BasicBlockImpl(int in, int out, int stride) {
  conv1 = register_module(
      "conv1", nn::Conv2d(nn::Conv2dOptions(in, out, 3).stride(stride).padding(1).bias(false)));
  bn1 = register_module("bn1", nn::BatchNorm2d(out));
  conv2 = register_module("conv2", nn::Conv2d(nn::Conv2dOptions(out, out, 3).padding(1).bias(false)));
  bn2 = register_module("bn2", nn::BatchNorm2d(out));
  if (stride != 1 || in != out) {
    skip = register_module("skip",
                           nn::Conv2d(nn::Conv2dOptions(in, out, 1).stride(stride).bias(false)));
    skip_bn = register_module("skip_bn", nn::BatchNorm2d(out));
  }
}

torch::Tensor BasicBlockImpl::forward(const torch::Tensor &x) {
  auto y = torch::relu(bn1(conv1(x)));
  y = bn2(conv2(y));
  return torch::relu(y + (skip ? skip_bn(skip(x)) : x));
}

MultiScaleTemporalImpl::MultiScaleTemporalImpl(int channels, int dilation, double dropout) {
  convs = register_module("convs", nn::ModuleList());
  norms = register_module("norms", nn::ModuleList());
  for (int k : {3, 5, 7}) {
    convs->push_back(nn::Conv1d(nn::Conv1dOptions(channels, channels, k)
                                    .dilation(dilation)
                                    .padding(dilation * (k - 1) / 2)));
    norms->push_back(nn::BatchNorm1d(channels));
  }
  drop = register_module("drop", nn::Dropout(dropout));
}

torch::Tensor MultiScaleTemporalImpl::forward(const torch::Tensor &x) {
  torch::Tensor sum;
  for (size_t b = 0; b < convs->size(); ++b) {
    auto y = torch::relu(norms[b]->as<nn::BatchNorm1d>()->forward(
        convs[b]->as<nn::Conv1d>()->forward(x)));
    sum = sum.defined() ? sum + y : y;
  }
  return x + drop(sum / static_cast<double>(convs->size()));
}

Lip2IndImpl::Lip2IndImpl(const Lip2IndConfig &cfg) : config_(cfg) {
  cfg.Validate();
  const int c = cfg.StemChannels();
  stem = register_module("stem", nn::Conv3d(nn::Conv3dOptions(1, c, {5, 7, 7})
                                                .stride({1, 2, 2})
                                                .padding({2, 3, 3})
                                                .bias(false)));
  stem_bn = register_module("stem_bn", nn::BatchNorm3d(c));
  upsample = register_module("upsample", nn::ConvTranspose3d(nn::ConvTranspose3dOptions(c, c, {4, 1, 1})
                                                                 .stride({2, 1, 1})
                                                                 .padding({1, 0, 0})
                                                                 .bias(false)));
  up_bn = register_module("up_bn", nn::BatchNorm3d(c));
  trunk = register_module("trunk", nn::Sequential());
  int in = c;
  for (int stage = 0; stage < 4; ++stage) {
    const int out = c << stage;
    trunk->push_back(BasicBlock(in, out, stage == 0 ? 1 : 2));
    trunk->push_back(BasicBlock(out, out, 1));
    in = out;
  }
  temporal = register_module("temporal", nn::ModuleList());
  for (int l = 0; l < cfg.tcn_layers; ++l)
    temporal->push_back(MultiScaleTemporal(in, 1 << l, cfg.dropout));
  classifier = register_module("classifier", nn::Linear(in, cfg.num_codes));
}

torch::Tensor Lip2IndImpl::forward(const torch::Tensor &lips) {
  const int crop = config_.augment.crop_size;
  if (lips.dim() != 4 || lips.size(2) != crop || lips.size(3) != crop)
    throw ContractError("lip2ind: expected lips [K, L, " + std::to_string(crop) + ", " +
                        std::to_string(crop) + "]");
  const auto K = lips.size(0), L = lips.size(1);
  if (L < 1) throw ContractError("lip2ind: empty lip sequence");
  auto x = torch::relu(stem_bn(stem(lips.unsqueeze(1))));  // [K, C, L, H/2, W/2]
  x = torch::max_pool3d(x, {1, 3, 3}, {1, 2, 2}, {0, 1, 1});
  x = torch::relu(up_bn(upsample(x)));  // [K, C, 2L, h, w]
  const auto C = x.size(1), h = x.size(3), w = x.size(4);
  x = x.transpose(1, 2).reshape({K * 2 * L, C, h, w});
  x = trunk->forward(x);
  x = x.mean({2, 3}).view({K, 2 * L, -1}).transpose(1, 2);  // [K, F, 2L]
  for (const auto &layer : *temporal) x = layer->as<MultiScaleTemporal>()->forward(x);
  return classifier(x.transpose(1, 2));
}

torch::Tensor Lip2IndImpl::Posteriors(const LipSequence &lips) {
  if (is_training()) throw ContractError("lip2ind inference requires eval mode");
  lips.Validate();
  torch::NoGradGuard guard;
  const auto t = torch::from_blob(const_cast<float *>(lips.pixels.data()),
                                  {1, lips.num_frames, lips.height, lips.width}, torch::kFloat);
  const auto crop = AugmentBatch(t, config_.augment, /*training=*/false, 0);
  return torch::softmax(forward(crop), -1).squeeze(0);
}

}  // namespace vcvts
