// src/vc/decoder.cc

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

#include "vcvts/vc/decoder.h"

#include <cmath>

#include <torch/torch.h>

#include "vcvts/base/error.h"

namespace vcvts {

FeedForwardImpl::FeedForwardImpl(int dim, int hidden, double dropout) {
  norm = register_module("norm", torch::nn::LayerNorm(torch::nn::LayerNormOptions({dim})));
  fc1 = register_module("fc1", torch::nn::Linear(dim, hidden));
  fc2 = register_module("fc2", torch::nn::Linear(hidden, dim));
  drop = register_module("drop", torch::nn::Dropout(dropout));
}

torch::Tensor FeedForwardImpl::forward(const torch::Tensor &x) {
  return drop(fc2(drop(torch::silu(fc1(norm(x))))));
}

ConvModuleImpl::ConvModuleImpl(int dim, int kernel, double dropout) {
  norm = register_module("norm", torch::nn::LayerNorm(torch::nn::LayerNormOptions({dim})));
  pointwise1 = register_module("pointwise1", torch::nn::Conv1d(torch::nn::Conv1dOptions(dim, 2 * dim, 1)));
  depthwise = register_module(
      "depthwise",
      torch::nn::Conv1d(torch::nn::Conv1dOptions(dim, dim, kernel).padding(kernel / 2).groups(dim)));
  depth_norm = register_module("depth_norm", torch::nn::LayerNorm(torch::nn::LayerNormOptions({dim})));
  pointwise2 = register_module("pointwise2", torch::nn::Conv1d(torch::nn::Conv1dOptions(dim, dim, 1)));
  drop = register_module("drop", torch::nn::Dropout(dropout));
}

torch::Tensor ConvModuleImpl::forward(const torch::Tensor &x, const torch::Tensor &mask) {
  auto y = norm(x);
  if (mask.defined()) y = y * mask.unsqueeze(-1).to(y.dtype());
  y = torch::glu(pointwise1(y.transpose(1, 2)), 1);
  y = depthwise(y).transpose(1, 2);
  y = torch::silu(depth_norm(y)).transpose(1, 2);
  return drop(pointwise2(y).transpose(1, 2));
}

ConformerBlockImpl::ConformerBlockImpl(int dim, int heads, int ffn, int kernel, double dropout) {
  ff1 = register_module("ff1", FeedForward(dim, ffn, dropout));
  attn_norm = register_module("attn_norm", torch::nn::LayerNorm(torch::nn::LayerNormOptions({dim})));
  attn = register_module(
      "attn", torch::nn::MultiheadAttention(torch::nn::MultiheadAttentionOptions(dim, heads)));
  drop = register_module("drop", torch::nn::Dropout(dropout));
  conv = register_module("conv", ConvModule(dim, kernel, dropout));
  ff2 = register_module("ff2", FeedForward(dim, ffn, dropout));
  out_norm = register_module("out_norm", torch::nn::LayerNorm(torch::nn::LayerNormOptions({dim})));
}

torch::Tensor ConformerBlockImpl::forward(const torch::Tensor &x_in, const torch::Tensor &mask) {
  auto x = x_in + 0.5 * ff1(x_in);
  const auto q = attn_norm(x).transpose(0, 1);  // [T, K, dim]
  torch::Tensor key_padding;
  if (mask.defined()) key_padding = mask.logical_not();
  const auto a = std::get<0>(attn(q, q, q, key_padding, /*need_weights=*/false));
  x = x + drop(a.transpose(0, 1));
  x = x + conv(x, mask);
  x = x + 0.5 * ff2(x);
  return out_norm(x);
}

torch::Tensor SinusoidalPositions(int length, int dim) {
  auto pe = torch::zeros({length, dim});
  const auto pos = torch::arange(length, torch::kFloat).unsqueeze(1);
  const auto div = torch::exp(torch::arange(0, dim, 2, torch::kFloat) * (-std::log(10000.0) / dim));
  pe.index_put_({torch::indexing::Slice(), torch::indexing::Slice(0, torch::indexing::None, 2)},
                torch::sin(pos * div));
  pe.index_put_({torch::indexing::Slice(), torch::indexing::Slice(1, torch::indexing::None, 2)},
                torch::cos(pos * div).narrow(1, 0, dim / 2));
  return pe;
}

DecoderImpl::DecoderImpl(const VCConfig &cfg) : dim_(cfg.decoder_dim) {
  in_proj = register_module("in_proj", torch::nn::Linear(cfg.code_dim + cfg.speaker_dim + 1, dim_));
  blocks = register_module("blocks", torch::nn::ModuleList());
  for (int b = 0; b < cfg.decoder_blocks; ++b)
    blocks->push_back(ConformerBlock(dim_, cfg.decoder_heads, cfg.decoder_ffn, cfg.decoder_kernel,
                                     cfg.decoder_dropout));
  refine = register_module("refine",
                           torch::nn::Conv1d(torch::nn::Conv1dOptions(dim_, dim_, 5).padding(2)));
  out_proj = register_module("out_proj", torch::nn::Linear(dim_, cfg.mel_bins));
}

torch::Tensor DecoderImpl::forward(const torch::Tensor &zhat, const torch::Tensor &s,
                                   const torch::Tensor &f0, const torch::Tensor &unit_mask) {
  if (zhat.dim() != 3 || f0.dim() != 2 || s.dim() != 2) throw ContractError("decoder: bad ranks");
  if (f0.size(0) != zhat.size(0) || f0.size(1) != zhat.size(1))
    throw ContractError("decoder: " + std::to_string(zhat.size(1)) + " unit frames but " +
                        std::to_string(f0.size(1)) + " F0 frames");
  const auto K = zhat.size(0), T2 = zhat.size(1);
  const auto spk = s.unsqueeze(1).expand({K, T2, s.size(1)});
  auto x = in_proj(torch::cat({zhat, spk, f0.unsqueeze(-1)}, -1));
  x = x + SinusoidalPositions(static_cast<int>(T2), dim_).to(x.dtype()).unsqueeze(0);
  for (const auto &block : *blocks) x = block->as<ConformerBlock>()->forward(x, unit_mask);
  x = x.repeat_interleave(2, 1);
  x = x + torch::relu(refine(x.transpose(1, 2))).transpose(1, 2);
  return out_proj(x);
}

}  // namespace vcvts
