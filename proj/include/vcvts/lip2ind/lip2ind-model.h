// include/vcvts/lip2ind/lip2ind-model.h

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

#ifndef VCVTS_LIP2IND_LIP2IND_MODEL_H_
#define VCVTS_LIP2IND_LIP2IND_MODEL_H_

#include <nlohmann/json.hpp>
#include <torch/nn.h>

#include "vcvts/lip2ind/augment.h"
#include "vcvts/media/lip-sequence.h"

namespace vcvts {

struct Lip2IndConfig {
  int num_codes = 200;
  double width_multiplier = 0.5;  // ResNet-18 channel scale
  int tcn_layers = 4;
  double dropout = 0.2;
  AugmentConfig augment;

  int StemChannels() const;
  int TrunkChannels() const;  // backbone feature size
  void Validate() const;
};

void to_json(nlohmann::json &j, const AugmentConfig &c);
void from_json(const nlohmann::json &j, AugmentConfig &c);
void to_json(nlohmann::json &j, const Lip2IndConfig &c);
void from_json(const nlohmann::json &j, Lip2IndConfig &c);

class BasicBlockImpl : public torch::nn::Module {
 public:
  BasicBlockImpl(int in, int out, int stride);
  torch::Tensor forward(const torch::Tensor &x);

 private:
  torch::nn::Conv2d conv1{nullptr}, conv2{nullptr}, skip{nullptr};
  torch::nn::BatchNorm2d bn1{nullptr}, bn2{nullptr}, skip_bn{nullptr};
};
TORCH_MODULE(BasicBlock);

/// One temporal layer: kernel-3/5/7 dilated branches averaged, residual.
class MultiScaleTemporalImpl : public torch::nn::Module {
 public:
  MultiScaleTemporalImpl(int channels, int dilation, double dropout);
  torch::Tensor forward(const torch::Tensor &x);  // [K, C, T]

 private:
  torch::nn::ModuleList convs{nullptr}, norms{nullptr};
  torch::nn::Dropout drop{nullptr};
};
TORCH_MODULE(MultiScaleTemporal);

/// Lips [K, L, crop, crop] -> logits [K, 2L, N].
class Lip2IndImpl : public torch::nn::Module {
 public:
  explicit Lip2IndImpl(const Lip2IndConfig &cfg);
  torch::Tensor forward(const torch::Tensor &lips);

  /// Row-stochastic posteriors [2L, N] for one clip, center-cropped; eval mode.
  torch::Tensor Posteriors(const LipSequence &lips);

  const Lip2IndConfig &Config() const { return config_; }

 private:
  Lip2IndConfig config_;
  torch::nn::Conv3d stem{nullptr};
  torch::nn::BatchNorm3d stem_bn{nullptr}, up_bn{nullptr};
  torch::nn::ConvTranspose3d upsample{nullptr};
  torch::nn::Sequential trunk{nullptr};
  torch::nn::ModuleList temporal{nullptr};
  torch::nn::Linear classifier{nullptr};
};
TORCH_MODULE(Lip2Ind);

}  // namespace vcvts

#endif  // VCVTS_LIP2IND_LIP2IND_MODEL_H_
