// include/vcvts/vc/vc-config.h

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

#ifndef VCVTS_VC_VC_CONFIG_H_
#define VCVTS_VC_VC_CONFIG_H_

#include <nlohmann/json.hpp>

namespace vcvts {

/// Per-component weights of the total voice-conversion loss.
struct LossWeights {
  double vq = 1.0;
  double cpc = 1.0;
  double mi = 1.0;
  double f0 = 1.0;
  double rec = 1.0;
};

struct VCConfig {
  int mel_bins = 80;
  // Content encoder and codebook.
  int hnet_hidden1 = 768;
  int hnet_hidden2 = 512;
  int codebook_size = 200;
  int code_dim = 160;
  double ema_decay = 0.999;
  double ema_eps = 1e-5;
  int dead_code_steps = 200;
  // Context network and contrastive head.
  int context_dim = 256;
  int cpc_horizon = 4;
  int cpc_negatives = 10;
  // Speaker encoder.
  int speaker_dim = 256;
  int speaker_hidden = 256;
  int speaker_kernel = 3;
  // Mutual-information estimator.
  int mi_hidden = 256;
  // Pitch predictor.
  int pitch_channels = 384;
  int pitch_kernel = 3;
  // Decoder.
  int decoder_dim = 384;
  int decoder_blocks = 4;
  int decoder_heads = 2;
  int decoder_ffn = 1536;
  int decoder_kernel = 31;
  double decoder_dropout = 0.1;

  LossWeights weights;

  void Validate() const;
};

void to_json(nlohmann::json &j, const LossWeights &w);
void from_json(const nlohmann::json &j, LossWeights &w);
void to_json(nlohmann::json &j, const VCConfig &c);
void from_json(const nlohmann::json &j, VCConfig &c);

}  // namespace vcvts

#endif  // VCVTS_VC_VC_CONFIG_H_
