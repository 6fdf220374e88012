// include/vcvts/vc/networks.h

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

#ifndef VCVTS_VC_NETWORKS_H_
#define VCVTS_VC_NETWORKS_H_

#include <torch/nn.h>

#include "vcvts/vc/vc-config.h"

namespace vcvts {

/// Conv1d over [K, T, C] sequences followed by a LayerNorm over channels.
class ConvLayerNormImpl : public torch::nn::Module {
 public:
  ConvLayerNormImpl(int in, int out, int kernel, int stride = 1, int padding = -1);
  torch::Tensor forward(const torch::Tensor &x);  // [K, T, in] -> [K, T', out]

 private:
  torch::nn::Conv1d conv{nullptr};
  torch::nn::LayerNorm norm{nullptr};
};
TORCH_MODULE(ConvLayerNorm);

/// Content encoder: mel [K, T, 80] -> Z [K, T/2, D].
class HNetImpl : public torch::nn::Module {
 public:
  explicit HNetImpl(const VCConfig &cfg);
  torch::Tensor forward(const torch::Tensor &mel);

 private:
  ConvLayerNorm block1{nullptr}, block2{nullptr};
  torch::nn::Conv1d down{nullptr};
};
TORCH_MODULE(HNet);

/// Causal context network: [K, T2, D] -> [K, T2, C].
class GNetImpl : public torch::nn::Module {
 public:
  explicit GNetImpl(const VCConfig &cfg);
  torch::Tensor forward(const torch::Tensor &zhat);

 private:
  torch::nn::GRU gru{nullptr};
};
TORCH_MODULE(GNet);

/// Convolutional front end, masked mean+std pooling, projection, L2 norm.
class SpeakerEncoderImpl : public torch::nn::Module {
 public:
  explicit SpeakerEncoderImpl(const VCConfig &cfg);
  /// mel [K, T, 80], mask [K, T] bool or undefined -> [K, S] unit vectors.
  torch::Tensor forward(const torch::Tensor &mel, const torch::Tensor &mask = {});

 private:
  torch::nn::Conv1d conv1{nullptr}, conv2{nullptr};
  torch::nn::Linear proj{nullptr};
};
TORCH_MODULE(SpeakerEncoder);

struct GaussianParams {
  torch::Tensor mu, logvar;
};

/// Variational q(s | z-bar) for the CLUB bound; log-variance squashed to [-1, 1].
class MiEstimatorImpl : public torch::nn::Module {
 public:
  MiEstimatorImpl(int in_dim, int hidden, int out_dim);
  GaussianParams forward(const torch::Tensor &zbar);

 private:
  torch::nn::Sequential mu_net{nullptr}, logvar_net{nullptr};
};
TORCH_MODULE(MiEstimator);

/// Normalized log-F0 per unit frame from units and speaker embedding.
class PitchPredictorImpl : public torch::nn::Module {
 public:
  explicit PitchPredictorImpl(const VCConfig &cfg);
  /// zhat [K, T2, D], s [K, S] -> [K, T2].
  torch::Tensor forward(const torch::Tensor &zhat, const torch::Tensor &s);

 private:
  torch::nn::Conv1d conv1{nullptr}, conv2{nullptr};
  torch::nn::LayerNorm norm1{nullptr}, norm2{nullptr};
  torch::nn::Linear out{nullptr};
};
TORCH_MODULE(PitchPredictor);

}  // namespace vcvts

#endif  // VCVTS_VC_NETWORKS_H_
