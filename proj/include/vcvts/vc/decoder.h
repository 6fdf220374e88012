// include/vcvts/vc/decoder.h

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

#ifndef VCVTS_VC_DECODER_H_
#define VCVTS_VC_DECODER_H_

#include <torch/nn.h>

#include "vcvts/vc/vc-config.h"

namespace vcvts {

/// Macaron feed-forward module: LN, Linear, SiLU, dropout, Linear, dropout.
class FeedForwardImpl : public torch::nn::Module {
 public:
  FeedForwardImpl(int dim, int hidden, double dropout);
  torch::Tensor forward(const torch::Tensor &x);

 private:
  torch::nn::LayerNorm norm{nullptr};
  torch::nn::Linear fc1{nullptr}, fc2{nullptr};
  torch::nn::Dropout drop{nullptr};
};
TORCH_MODULE(FeedForward);

/// Pointwise conv, GLU, depthwise conv, LayerNorm, SiLU, pointwise conv.
class ConvModuleImpl : public torch::nn::Module {
 public:
  ConvModuleImpl(int dim, int kernel, double dropout);
  torch::Tensor forward(const torch::Tensor &x, const torch::Tensor &mask);

 private:
  torch::nn::LayerNorm norm{nullptr}, depth_norm{nullptr};
  torch::nn::Conv1d pointwise1{nullptr}, depthwise{nullptr}, pointwise2{nullptr};
  torch::nn::Dropout drop{nullptr};
};
TORCH_MODULE(ConvModule);

class ConformerBlockImpl : public torch::nn::Module {
 public:
  ConformerBlockImpl(int dim, int heads, int ffn, int kernel, double dropout);
  /// x [K, T, dim]; mask [K, T] bool (true on valid frames) or undefined.
  torch::Tensor forward(const torch::Tensor &x, const torch::Tensor &mask = {});

 private:
  FeedForward ff1{nullptr}, ff2{nullptr};
  torch::nn::LayerNorm attn_norm{nullptr}, out_norm{nullptr};
  torch::nn::MultiheadAttention attn{nullptr};
  torch::nn::Dropout drop{nullptr};
  ConvModule conv{nullptr};
};
TORCH_MODULE(ConformerBlock);

/// Sinusoidal position table [T, dim].
torch::Tensor SinusoidalPositions(int length, int dim);

/// [units, speaker, f0] at 50 FPS -> mel frames at 100 FPS.
class DecoderImpl : public torch::nn::Module {
 public:
  explicit DecoderImpl(const VCConfig &cfg);
  /// zhat [K, T2, D], s [K, S], f0 [K, T2], unit_mask [K, T2] or undefined.
  /// Returns [K, 2 T2, bins].
  torch::Tensor forward(const torch::Tensor &zhat, const torch::Tensor &s,
                        const torch::Tensor &f0, const torch::Tensor &unit_mask = {});

 private:
  torch::nn::Linear in_proj{nullptr}, out_proj{nullptr};
  torch::nn::ModuleList blocks{nullptr};
  torch::nn::Conv1d refine{nullptr};
  int dim_;
};
TORCH_MODULE(Decoder);

}  // namespace vcvts

#endif  // VCVTS_VC_DECODER_H_
