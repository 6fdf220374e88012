// src/pipeline/experiments.cc

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

#include "vcvts/pipeline/experiments.h"

#include <map>

#include <torch/torch.h>

#include "vcvts/base/error.h"
#include "vcvts/corpus/av-sample.h"
#include "vcvts/media/lip-sequence.h"

namespace vcvts {

std::string SameSpeakerReference(const Manifest &manifest, const std::string &sample_id) {
  const ManifestEntry &self = manifest.Find(sample_id);
  const ManifestEntry *fallback = nullptr;
  for (const ManifestEntry &e : manifest.entries) {
    if (e.speaker_id != self.speaker_id || e.sample_id == sample_id) continue;
    if (e.split == Split::kTrain) return e.sample_id;
    if (!fallback) fallback = &e;
  }
  if (!fallback) throw ContractError("speaker " + self.speaker_id + " has no reference clip besides " + sample_id);
  return fallback->sample_id;
}

EvalReport EvaluateVts(VtsSystem &system, const Manifest &manifest, Split split,
                       const VtsEvalOptions &opts) {
  std::vector<std::string> ids;
  for (const ManifestEntry *e : manifest.Entries(split)) ids.push_back(e->sample_id);
  if (ids.empty()) throw ContractError("split " + SplitName(split) + " is empty");
  std::map<std::string, std::string> lips_of;
  for (std::size_t i = 0; i < ids.size(); ++i)
    lips_of[ids[i]] = opts.shuffled_lips ? ids[(i + 1) % ids.size()] : ids[i];

  const int rate = opts.eval.analysis.sample_rate;
  auto audio = [&](const std::string &id) {
    return LoadWaveform(manifest.Resolve(manifest.Find(id).wav_path), rate);
  };
  auto synthesize = [&](const std::string &id) {
    const LipSequence lips = ReadLips(manifest.Resolve(manifest.Find(lips_of.at(id)).lip_path));
    const Waveform ref = audio(SameSpeakerReference(manifest, id));
    return Synthesize(system, lips, ref, opts.synthesis).wave;
  };
  return EvaluateSystem(ids, audio, synthesize, opts.eval);
}

nlohmann::json UnitAnalysis::ToJson() const {
  nlohmann::json points = nlohmann::json::array();
  for (std::size_t i = 0; i < sample_ids.size(); ++i)
    points.push_back({{"sample_id", sample_ids[i]},
                      {"speaker_id", speaker_names[speaker_labels[i]]},
                      {"x", speakers.coords(i, 0)},
                      {"y", speakers.coords(i, 1)}});
  return {{"purity", purity.ToJson()},
          {"speaker_silhouette", speakers.silhouette},
          {"projection", points}};
}

UnitAnalysis AnalyzeUnits(VCModel &vc, const Manifest &manifest, Split split,
                          const AnalysisConfig &analysis, const TsneConfig &tsne) {
  UnitAnalysis out;
  std::vector<std::vector<PhonemeSegment>> alignments;
  std::vector<torch::Tensor> embeddings;
  std::map<std::string, int> label_of;
  vc->eval();
  for (const ManifestEntry *e : manifest.Entries(split)) {
    if (!e->alignment) throw ContractError("sample " + e->sample_id + " has no alignment");
    const AVSample s = LoadSample(manifest, e->sample_id, analysis);
    const auto idx = vc->Encode(s.mel).indices.contiguous();
    out.indices.emplace_back(idx.data_ptr<int64_t>(), idx.data_ptr<int64_t>() + idx.numel());
    alignments.push_back(*e->alignment);
    embeddings.push_back(vc->SpeakerEmbed(s.mel).to(torch::kDouble));
    auto [it, fresh] = label_of.emplace(e->speaker_id, static_cast<int>(label_of.size()));
    if (fresh) out.speaker_names.push_back(e->speaker_id);
    out.speaker_labels.push_back(it->second);
    out.sample_ids.push_back(e->sample_id);
  }
  if (out.sample_ids.empty()) throw ContractError("split " + SplitName(split) + " is empty");
  out.purity = UnitPurityReport(out.indices, alignments, vc->codebook->NumCodes());
  const auto emb = torch::stack(embeddings).contiguous();
  const Eigen::MatrixXd x = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      emb.data_ptr<double>(), emb.size(0), emb.size(1));
  out.speakers = ProjectSpeakers(x, out.speaker_labels, tsne);
  return out;
}

}  // namespace vcvts
