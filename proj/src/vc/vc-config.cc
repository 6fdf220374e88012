// src/vc/vc-config.cc

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

#include "vcvts/vc/vc-config.h"

#include "vcvts/base/error.h"

namespace vcvts {

void VCConfig::Validate() const {
  if (mel_bins < 1 || code_dim < 1 || codebook_size < 1 || context_dim < 1 ||
      speaker_dim < 1 || decoder_dim < 1 || decoder_blocks < 0)
    throw ContractError("VC dimensions must be positive");
  if (cpc_horizon < 1 || cpc_negatives < 1)
    throw ContractError("CPC horizon and negatives must be >= 1");
  if (decoder_dim % decoder_heads) throw ContractError("decoder_dim % heads != 0");
  if (decoder_kernel % 2 == 0 || speaker_kernel % 2 == 0 || pitch_kernel % 2 == 0)
    throw ContractError("convolution kernels must be odd");
  if (!(ema_decay >= 0.0 && ema_decay < 1.0)) throw ContractError("ema_decay in [0, 1)");
}

void to_json(nlohmann::json &j, const LossWeights &w) {
  j = {{"vq", w.vq}, {"cpc", w.cpc}, {"mi", w.mi}, {"f0", w.f0}, {"rec", w.rec}};
}

void from_json(const nlohmann::json &j, LossWeights &w) {
  w.vq = j.value("vq", w.vq);
  w.cpc = j.value("cpc", w.cpc);
  w.mi = j.value("mi", w.mi);
  w.f0 = j.value("f0", w.f0);
  w.rec = j.value("rec", w.rec);
}

#define VCVTS_CONFIG_FIELDS(X)                                                  \
  X(mel_bins) X(hnet_hidden1) X(hnet_hidden2) X(codebook_size) X(code_dim)      \
  X(ema_decay) X(ema_eps) X(dead_code_steps) X(context_dim) X(cpc_horizon)      \
  X(cpc_negatives) X(speaker_dim) X(speaker_hidden) X(speaker_kernel)           \
  X(mi_hidden) X(pitch_channels) X(pitch_kernel) X(decoder_dim)                 \
  X(decoder_blocks) X(decoder_heads) X(decoder_ffn) X(decoder_kernel)           \
  X(decoder_dropout)

void to_json(nlohmann::json &j, const VCConfig &c) {
  j = nlohmann::json::object();
#define X(name) j[#name] = c.name;
  VCVTS_CONFIG_FIELDS(X)
#undef X
  j["weights"] = c.weights;
}

void from_json(const nlohmann::json &j, VCConfig &c) {
#define X(name) c.name = j.value(#name, c.name);
  VCVTS_CONFIG_FIELDS(X)
#undef X
  if (j.contains("weights")) c.weights = j["weights"].get<LossWeights>();
}

}  // namespace vcvts
