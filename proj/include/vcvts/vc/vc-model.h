// include/vcvts/vc/vc-model.h

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

#ifndef VCVTS_VC_VC_MODEL_H_
#define VCVTS_VC_VC_MODEL_H_

#include <cstdint>
#include <vector>

#include <torch/nn.h>

#include "vcvts/corpus/batch-iterator.h"
#include "vcvts/media/mel-spectrogram.h"
#include "vcvts/vc/decoder.h"
#include "vcvts/vc/losses.h"
#include "vcvts/vc/networks.h"
#include "vcvts/vc/quantizer.h"
#include "vcvts/vc/vc-config.h"

namespace vcvts {

/// Normalized log-F0 targets at the unit rate from 100 FPS contours.
/// f0 [K, T] Hz, voiced and mask [K, T] bool.  Pairs are pooled over their
/// voiced members, then normalized per item over its voiced, unmasked unit
/// frames (stddev floored at 0.02); unvoiced frames are 0.
struct UnitF0Targets {
  torch::Tensor target;  // [K, T/2]
  torch::Tensor voiced;  // [K, T/2] bool
  torch::Tensor mask;    // [K, T/2] bool
};
UnitF0Targets MakeUnitF0Targets(const torch::Tensor &f0, const torch::Tensor &voiced,
                                const torch::Tensor &mask);

struct VCStep {
  LossComponents components;
  torch::Tensor total;
  /// -log q(s | z-bar) on detached features; minimized by the estimator only.
  torch::Tensor mi_estimator_loss;
  torch::Tensor z;          // [K, T2, D] pre-quantization frames
  torch::Tensor indices;    // [K, T2]
  torch::Tensor unit_mask;  // [K, T2]
  torch::Tensor speaker;    // [K, S]
};

class VCModelImpl : public torch::nn::Module {
 public:
  explicit VCModelImpl(const VCConfig &cfg);

  /// Per-bin statistics used to standardize log-mel input.
  void SetMelStats(const torch::Tensor &mean, const torch::Tensor &stddev);
  torch::Tensor NormalizeMel(const torch::Tensor &mel) const;
  torch::Tensor DenormalizeMel(const torch::Tensor &mel) const;

  /// All training losses for one batch.  `seed` drives the CPC negatives.
  /// A single-item batch has no mismatched pairs, so its MI term is 0.
  VCStep Forward(const Batch &batch, std::uint64_t seed);

  /// Parameters optimized on the total loss (everything except the MI
  /// estimator).
  std::vector<torch::Tensor> MainParameters() const;

  // Inference on single utterances; require eval mode.
  torch::Tensor ContentFrames(const MelSpectrogram &mel);  // [T/2, D]
  Quantized Encode(const MelSpectrogram &mel);             // [T/2, D], [T/2]
  torch::Tensor SpeakerEmbed(const MelSpectrogram &mel);   // [S]
  torch::Tensor PredictF0(const torch::Tensor &zhat, const torch::Tensor &s);  // [T2]
  MelSpectrogram Decode(const torch::Tensor &zhat, const torch::Tensor &s,
                        const torch::Tensor &f0);

  const VCConfig &Config() const { return config_; }

  HNet h_net{nullptr};
  Codebook codebook{nullptr};
  GNet g_net{nullptr};
  torch::Tensor cpc_projections;  // [M, D, C]
  SpeakerEncoder speaker_encoder{nullptr};
  MiEstimator mi_estimator{nullptr};
  PitchPredictor pitch_predictor{nullptr};
  Decoder decoder{nullptr};
  torch::Tensor mel_mean, mel_std;

 private:
  torch::Tensor MelTensor(const MelSpectrogram &mel) const;  // [1, T, bins] normalized
  void RequireEval() const;

  VCConfig config_;
};
TORCH_MODULE(VCModel);

}  // namespace vcvts

#endif  // VCVTS_VC_VC_MODEL_H_
