// src/vc/vc-model.cc

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

#include "vcvts/vc/vc-model.h"

#include <cmath>

#include <torch/torch.h>

#include "vcvts/base/error.h"

namespace vcvts {

UnitF0Targets MakeUnitF0Targets(const torch::Tensor &f0, const torch::Tensor &voiced,
                                const torch::Tensor &mask) {
  if (f0.dim() != 2 || f0.size(1) % 2 != 0)
    throw ContractError("F0 targets: expected [K, T] with even T");
  const auto K = f0.size(0), T2 = f0.size(1) / 2;
  const auto v = voiced.to(torch::kDouble).view({K, T2, 2});
  const auto f = f0.to(torch::kDouble).view({K, T2, 2});
  const auto count = v.sum(-1);
  UnitF0Targets out;
  out.voiced = count > 0;
  out.mask = mask.view({K, T2, 2}).select(2, 0);
  const auto logf = torch::log(((f * v).sum(-1) / count.clamp_min(1.0)).clamp_min(1.0));
  const auto w = (out.voiced & out.mask).to(torch::kDouble);
  const auto n = w.sum(1, true).clamp_min(1.0);
  const auto mean = (logf * w).sum(1, true) / n;
  const auto var = ((logf - mean).pow(2) * w).sum(1, true) / n;
  const auto sd = torch::sqrt(var).clamp_min(0.02);
  out.target = torch::where(out.voiced, (logf - mean) / sd, torch::zeros_like(logf))
                   .to(f0.dtype());
  return out;
}

VCModelImpl::VCModelImpl(const VCConfig &cfg) : config_(cfg) {
  cfg.Validate();
  h_net = register_module("h_net", HNet(cfg));
  codebook = register_module("codebook", Codebook(cfg.codebook_size, cfg.code_dim, cfg.ema_decay,
                                                  cfg.ema_eps, cfg.dead_code_steps));
  g_net = register_module("g_net", GNet(cfg));
  cpc_projections = register_parameter(
      "cpc_projections", torch::randn({cfg.cpc_horizon, cfg.code_dim, cfg.context_dim}) /
                             std::sqrt(static_cast<double>(cfg.context_dim)));
  speaker_encoder = register_module("speaker_encoder", SpeakerEncoder(cfg));
  mi_estimator =
      register_module("mi_estimator", MiEstimator(cfg.code_dim, cfg.mi_hidden, cfg.speaker_dim));
  pitch_predictor = register_module("pitch_predictor", PitchPredictor(cfg));
  decoder = register_module("decoder", Decoder(cfg));
  mel_mean = register_buffer("mel_mean", torch::zeros({cfg.mel_bins}));
  mel_std = register_buffer("mel_std", torch::ones({cfg.mel_bins}));
}

void VCModelImpl::SetMelStats(const torch::Tensor &mean, const torch::Tensor &stddev) {
  if (mean.numel() != config_.mel_bins || stddev.numel() != config_.mel_bins)
    throw ContractError("mel stats: expected " + std::to_string(config_.mel_bins) + " bins");
  torch::NoGradGuard guard;
  mel_mean.copy_(mean.reshape({-1}));
  mel_std.copy_(stddev.reshape({-1}).clamp_min(1e-3));
}

torch::Tensor VCModelImpl::NormalizeMel(const torch::Tensor &mel) const {
  return (mel - mel_mean.to(mel.dtype())) / mel_std.to(mel.dtype());
}

torch::Tensor VCModelImpl::DenormalizeMel(const torch::Tensor &mel) const {
  return mel * mel_std.to(mel.dtype()) + mel_mean.to(mel.dtype());
}

VCStep VCModelImpl::Forward(const Batch &batch, std::uint64_t seed) {
  const auto x = NormalizeMel(batch.mel);
  const auto mask = batch.mask;
  VCStep step;
  step.z = h_net(x);
  const auto K = step.z.size(0), T2 = step.z.size(1);
  const Quantized q = Quantize(step.z, codebook->entries);
  step.indices = q.indices;
  const auto zq = StraightThrough(step.z, q.frames);
  const UnitF0Targets f0 = MakeUnitF0Targets(batch.f0, batch.voiced, mask);
  step.unit_mask = f0.mask;

  LossComponents &c = step.components;
  c.vq = VqLoss(step.z, q.frames, step.unit_mask);

  const auto context = g_net(zq);
  const auto negatives =
      SampleCpcNegatives(static_cast<int>(K), static_cast<int>(T2), config_.cpc_horizon,
                         config_.cpc_negatives, seed);
  c.cpc = CpcLoss(zq, context, cpc_projections, negatives);

  step.speaker = speaker_encoder(x, mask);
  const auto um = step.unit_mask.to(step.z.dtype()).unsqueeze(-1);
  const auto zbar = (step.z * um).sum(1) / um.sum(1).clamp_min(1.0);
  if (K >= 2) {
    const GaussianParams g = mi_estimator(zbar);
    c.mi = ClubBound(g.mu, g.logvar, step.speaker).bound;
    const GaussianParams gd = mi_estimator(zbar.detach());
    step.mi_estimator_loss = -ClubBound(gd.mu, gd.logvar, step.speaker.detach()).matched_ll;
  } else {
    c.mi = torch::zeros({}, step.z.options());
    step.mi_estimator_loss = torch::zeros({}, step.z.options());
  }

  const auto f0_pred = pitch_predictor(zq.detach(), step.speaker.detach());
  c.f0 = F0MseLoss(f0_pred, f0.target, step.unit_mask);

  const auto mel_hat = decoder(zq, step.speaker, f0.target, step.unit_mask);
  c.rec = ReconstructionLoss(mel_hat, x, mask);

  step.total = TotalLoss(c, config_.weights);
  return step;
}

std::vector<torch::Tensor> VCModelImpl::MainParameters() const {
  std::vector<torch::Tensor> out;
  for (const auto &item : named_parameters(true))
    if (item.key().rfind("mi_estimator.", 0) != 0) out.push_back(item.value());
  return out;
}

void VCModelImpl::RequireEval() const {
  if (is_training()) throw ContractError("VC inference requires eval mode");
}

torch::Tensor VCModelImpl::MelTensor(const MelSpectrogram &mel) const {
  if (mel.NumBins() != config_.mel_bins)
    throw ContractError("expected " + std::to_string(config_.mel_bins) + " mel bins, got " +
                        std::to_string(mel.NumBins()));
  const auto t = torch::from_blob(const_cast<float *>(mel.frames.data()),
                                  {1, mel.NumFrames(), mel.NumBins()}, torch::kFloat)
                     .clone();
  return NormalizeMel(t);
}

torch::Tensor VCModelImpl::ContentFrames(const MelSpectrogram &mel) {
  RequireEval();
  torch::NoGradGuard guard;
  return h_net(MelTensor(mel)).squeeze(0);
}

Quantized VCModelImpl::Encode(const MelSpectrogram &mel) {
  return Quantize(ContentFrames(mel), codebook->entries);
}

torch::Tensor VCModelImpl::SpeakerEmbed(const MelSpectrogram &mel) {
  RequireEval();
  torch::NoGradGuard guard;
  return speaker_encoder(MelTensor(mel)).squeeze(0);
}

torch::Tensor VCModelImpl::PredictF0(const torch::Tensor &zhat, const torch::Tensor &s) {
  RequireEval();
  torch::NoGradGuard guard;
  return pitch_predictor(zhat.unsqueeze(0), s.unsqueeze(0)).squeeze(0);
}

MelSpectrogram VCModelImpl::Decode(const torch::Tensor &zhat, const torch::Tensor &s,
                                   const torch::Tensor &f0) {
  RequireEval();
  torch::NoGradGuard guard;
  const auto mel =
      DenormalizeMel(decoder(zhat.unsqueeze(0), s.unsqueeze(0), f0.unsqueeze(0)).squeeze(0))
          .to(torch::kFloat)
          .contiguous();
  MelSpectrogram out;
  out.frames = Eigen::Map<const FrameMatrix>(mel.data_ptr<float>(), mel.size(0), mel.size(1));
  return out;
}

}  // namespace vcvts
