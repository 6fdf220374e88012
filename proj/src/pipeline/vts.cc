// src/pipeline/vts.cc

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

#include "vcvts/pipeline/vts.h"

#include <chrono>
#include <random>

#include <torch/torch.h>

#include "vcvts/base/checksum.h"
#include "vcvts/base/error.h"
#include "vcvts/lip2ind/transfer.h"
#include "vcvts/media/griffin-lim.h"
#include "vcvts/media/pitch.h"
#include "vcvts/trainer/checkpoint.h"
#include "vcvts/trainer/train-lip2ind.h"
#include "vcvts/trainer/train-vc.h"

namespace vcvts {

namespace {

std::vector<float> ToVector(const torch::Tensor &t) {
  const auto c = t.detach().to(torch::kFloat).contiguous();
  return {c.data_ptr<float>(), c.data_ptr<float>() + c.numel()};
}

Waveform AtRate(const Waveform &wave, const AnalysisConfig &cfg) {
  wave.Validate();
  return wave.sample_rate == cfg.sample_rate ? wave : Resample(wave, cfg.sample_rate);
}

MelSpectrogram EvenMel(const Waveform &wave, const AnalysisConfig &cfg) {
  MelSpectrogram mel = ComputeMelSpectrogram(wave, cfg);
  return mel.NumFrames() % 2 ? mel.Head(mel.NumFrames() - 1) : mel;
}

struct ReferenceFeatures {
  torch::Tensor embedding;
  LogF0Stats f0_stats;
};

ReferenceFeatures EncodeReference(VCModel &vc, const Waveform &reference,
                                  const SynthesisConfig &cfg) {
  const Waveform ref = AtRate(reference, cfg.analysis);
  if (ref.Duration() < cfg.min_reference_sec)
    throw ContractError("reference utterance is " + std::to_string(ref.Duration()) +
                        " s, shorter than " + std::to_string(cfg.min_reference_sec) + " s");
  ReferenceFeatures out;
  out.embedding = vc->SpeakerEmbed(ComputeMelSpectrogram(ref, cfg.analysis));
  out.f0_stats = ComputeLogF0Stats(ExtractF0(ref, cfg.analysis));
  return out;
}

SynthesisResult Render(VCModel &vc, const torch::Tensor &units, const ReferenceFeatures &ref,
                       const torch::Tensor &f0_normalized, const SynthesisConfig &cfg) {
  SynthesisResult r;
  r.diagnostics.speaker_embedding = ToVector(ref.embedding);
  r.diagnostics.f0_normalized = ToVector(f0_normalized);
  const std::vector<std::uint8_t> all_voiced(r.diagnostics.f0_normalized.size(), 1);
  r.diagnostics.f0_hz =
      DenormalizeLogF0(r.diagnostics.f0_normalized, all_voiced, ref.f0_stats, 50.0).values;
  r.diagnostics.mel = vc->Decode(units, ref.embedding, f0_normalized);
  r.wave = GriffinLim(r.diagnostics.mel, cfg.analysis);
  return r;
}

}  // namespace

torch::Tensor LookupUnits(const std::vector<int> &indices, const Codebook &codebook) {
  const auto idx = torch::tensor(std::vector<int64_t>(indices.begin(), indices.end()), torch::kInt64);
  return LookupCodes(idx, codebook->entries);
}

void CheckCompatible(VCModel &vc, std::uint64_t lip2ind_codebook_checksum) {
  const std::uint64_t have = vc->codebook->Checksum();
  if (have != lip2ind_codebook_checksum)
    throw ChecksumError("Lip2Ind model was trained on codebook " +
                        HexU64(lip2ind_codebook_checksum) + " but the VC checkpoint has " +
                        HexU64(have));
}

VtsSystem LoadVtsSystem(const std::string &vc_checkpoint, const std::string &lip2ind_checkpoint) {
  VtsSystem sys;
  sys.vc = LoadVCModel(vc_checkpoint);
  Checkpoint meta;
  sys.lip2ind = LoadLip2IndModel(lip2ind_checkpoint, &meta);
  CheckCompatible(sys.vc, meta.codebook_checksum);
  sys.vc->eval();
  sys.lip2ind->eval();
  if (sys.lip2ind->Config().num_codes != sys.vc->codebook->NumCodes())
    throw ContractError("Lip2Ind classifies into " + std::to_string(sys.lip2ind->Config().num_codes) +
                        " codes but the codebook has " +
                        std::to_string(sys.vc->codebook->NumCodes()));
  return sys;
}

nlohmann::json SynthesisDiagnostics::ToJson() const {
  return {{"indices", indices},
          {"speaker_embedding", speaker_embedding},
          {"f0_normalized", f0_normalized},
          {"f0_hz", f0_hz},
          {"mel_frames", mel.NumFrames()},
          {"seconds", seconds}};
}

SynthesisResult Synthesize(VtsSystem &system, const LipSequence &lips, const Waveform &reference,
                           const SynthesisConfig &cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  if (lips.num_frames < 1) throw ContractError("synthesize: empty lip sequence");
  const ReferenceFeatures ref = EncodeReference(system.vc, reference, cfg);
  const auto q = system.lip2ind->Posteriors(lips);
  torch::Tensor idx;
  if (cfg.sample_indices) {
    std::mt19937_64 rng(cfg.sample_seed);
    const auto qd = q.to(torch::kDouble).contiguous();
    idx = torch::empty({qd.size(0)}, torch::kInt64);
    for (int64_t t = 0; t < qd.size(0); ++t) {
      const double *row = qd.data_ptr<double>() + t * qd.size(1);
      std::discrete_distribution<int64_t> pick(row, row + qd.size(1));
      idx[t] = pick(rng);
    }
  } else {
    idx = PredictIndices(q);
  }
  idx = idx.contiguous();
  std::vector<int> indices(idx.data_ptr<int64_t>(), idx.data_ptr<int64_t>() + idx.numel());
  const auto units = LookupUnits(indices, system.vc->codebook);
  const auto f0 = system.vc->PredictF0(units, ref.embedding);
  SynthesisResult r = Render(system.vc, units, ref, f0, cfg);
  r.diagnostics.indices = std::move(indices);
  r.diagnostics.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

SynthesisResult ConvertVoice(VCModel &vc, const Waveform &source, const Waveform &reference,
                             const SynthesisConfig &cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const ReferenceFeatures ref = EncodeReference(vc, reference, cfg);
  const Waveform src = AtRate(source, cfg.analysis);
  const MelSpectrogram mel = EvenMel(src, cfg.analysis);
  if (mel.NumFrames() < 2) throw ContractError("convert: source is too short");
  const Quantized q = vc->Encode(mel);
  const PitchContour pooled = PoolF0ToUnitRate(ExtractF0(src, cfg.analysis).Head(mel.NumFrames()));
  const std::vector<float> f0n = NormalizeLogF0(pooled, ComputeLogF0Stats(pooled));
  const auto f0 = torch::tensor(f0n, torch::kFloat);
  SynthesisResult r = Render(vc, q.frames, ref, f0, cfg);
  const auto idx = q.indices.contiguous();
  r.diagnostics.indices.assign(idx.data_ptr<int64_t>(), idx.data_ptr<int64_t>() + idx.numel());
  r.diagnostics.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace vcvts
