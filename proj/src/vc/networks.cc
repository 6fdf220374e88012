// src/vc/networks.cc

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

#include "vcvts/vc/networks.h"

#include <torch/torch.h>

#include "vcvts/base/error.h"

namespace vcvts {

namespace {

namespace F = torch::nn::functional;

torch::nn::Conv1d Conv(int in, int out, int kernel, int stride, int padding) {
  return torch::nn::Conv1d(
      torch::nn::Conv1dOptions(in, out, kernel).stride(stride).padding(padding));
}

// Mean and standard deviation over time of x [K, T, C] restricted to mask.
torch::Tensor StatsPool(const torch::Tensor &x, const torch::Tensor &mask) {
  torch::Tensor w;
  if (mask.defined()) {
    w = mask.to(x.dtype()).unsqueeze(-1);
  } else {
    w = torch::ones({x.size(0), x.size(1), 1}, x.options());
  }
  const auto n = w.sum(1).clamp_min(1.0);
  const auto mean = (x * w).sum(1) / n;
  const auto var = ((x - mean.unsqueeze(1)).pow(2) * w).sum(1) / n;
  return torch::cat({mean, torch::sqrt(var + 1e-6)}, -1);
}

}  // namespace

ConvLayerNormImpl::ConvLayerNormImpl(int in, int out, int kernel, int stride, int padding) {
  conv = register_module("conv", Conv(in, out, kernel, stride, padding < 0 ? kernel / 2 : padding));
  norm = register_module("norm", torch::nn::LayerNorm(torch::nn::LayerNormOptions({out})));
}

torch::Tensor ConvLayerNormImpl::forward(const torch::Tensor &x) {
  return norm(conv(x.transpose(1, 2)).transpose(1, 2));
}

HNetImpl::HNetImpl(const VCConfig &cfg) {
  block1 = register_module("block1", ConvLayerNorm(cfg.mel_bins, cfg.hnet_hidden1, 5));
  block2 = register_module("block2", ConvLayerNorm(cfg.hnet_hidden1, cfg.hnet_hidden2, 5));
  down = register_module("down", Conv(cfg.hnet_hidden2, cfg.code_dim, 4, 2, 1));
}

torch::Tensor HNetImpl::forward(const torch::Tensor &mel) {
  if (mel.dim() != 3) throw ContractError("h-net: expected [K, T, bins]");
  if (mel.size(1) % 2 != 0)
    throw ContractError("h-net: mel length " + std::to_string(mel.size(1)) + " is odd");
  auto x = torch::relu(block1(mel));
  x = torch::relu(block2(x));
  return down(x.transpose(1, 2)).transpose(1, 2);
}

GNetImpl::GNetImpl(const VCConfig &cfg) {
  gru = register_module(
      "gru", torch::nn::GRU(torch::nn::GRUOptions(cfg.code_dim, cfg.context_dim).batch_first(true)));
}

torch::Tensor GNetImpl::forward(const torch::Tensor &zhat) {
  if (zhat.dim() != 3 || zhat.size(1) == 0) throw ContractError("g-net: expected [K, T2, D]");
  return std::get<0>(gru(zhat));
}

SpeakerEncoderImpl::SpeakerEncoderImpl(const VCConfig &cfg) {
  const int k = cfg.speaker_kernel;
  conv1 = register_module("conv1", Conv(cfg.mel_bins, cfg.speaker_hidden, k, 1, k / 2));
  conv2 = register_module("conv2", Conv(cfg.speaker_hidden, cfg.speaker_hidden, k, 1, k / 2));
  proj = register_module("proj", torch::nn::Linear(2 * cfg.speaker_hidden, cfg.speaker_dim));
}

torch::Tensor SpeakerEncoderImpl::forward(const torch::Tensor &mel, const torch::Tensor &mask) {
  if (mel.dim() != 3) throw ContractError("speaker encoder: expected [K, T, bins]");
  if (mel.size(1) < 8)
    throw ContractError("speaker encoder: needs at least 8 mel frames, got " +
                        std::to_string(mel.size(1)));
  auto x = torch::relu(conv1(mel.transpose(1, 2)));
  x = torch::relu(conv2(x)).transpose(1, 2);
  return F::normalize(proj(StatsPool(x, mask)), F::NormalizeFuncOptions().dim(-1).eps(1e-12));
}

MiEstimatorImpl::MiEstimatorImpl(int in_dim, int hidden, int out_dim) {
  mu_net = register_module("mu", torch::nn::Sequential(torch::nn::Linear(in_dim, hidden),
                                                       torch::nn::ReLU(),
                                                       torch::nn::Linear(hidden, out_dim)));
  logvar_net = register_module(
      "logvar", torch::nn::Sequential(torch::nn::Linear(in_dim, hidden), torch::nn::ReLU(),
                                      torch::nn::Linear(hidden, out_dim)));
}

GaussianParams MiEstimatorImpl::forward(const torch::Tensor &zbar) {
  return {mu_net->forward(zbar), torch::tanh(logvar_net->forward(zbar))};
}

PitchPredictorImpl::PitchPredictorImpl(const VCConfig &cfg) {
  const int k = cfg.pitch_kernel, c = cfg.pitch_channels;
  conv1 = register_module("conv1", Conv(cfg.code_dim + cfg.speaker_dim, c, k, 1, k / 2));
  norm1 = register_module("norm1", torch::nn::LayerNorm(torch::nn::LayerNormOptions({c})));
  conv2 = register_module("conv2", Conv(c, c, k, 1, k / 2));
  norm2 = register_module("norm2", torch::nn::LayerNorm(torch::nn::LayerNormOptions({c})));
  out = register_module("out", torch::nn::Linear(c, 1));
}

torch::Tensor PitchPredictorImpl::forward(const torch::Tensor &zhat, const torch::Tensor &s) {
  if (zhat.dim() != 3 || zhat.size(1) == 0) throw ContractError("pitch predictor: empty units");
  const auto spk = s.unsqueeze(1).expand({zhat.size(0), zhat.size(1), s.size(-1)});
  auto x = torch::cat({zhat, spk}, -1).transpose(1, 2);
  x = norm1(torch::relu(conv1(x)).transpose(1, 2));
  x = norm2(torch::relu(conv2(x.transpose(1, 2))).transpose(1, 2));
  return out(x).squeeze(-1);
}

}  // namespace vcvts
