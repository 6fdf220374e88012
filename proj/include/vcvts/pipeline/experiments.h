// include/vcvts/pipeline/experiments.h

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

#ifndef VCVTS_PIPELINE_EXPERIMENTS_H_
#define VCVTS_PIPELINE_EXPERIMENTS_H_

#include <string>
#include <vector>

#include "vcvts/corpus/manifest.h"
#include "vcvts/metrics/evaluation.h"
#include "vcvts/metrics/projection.h"
#include "vcvts/metrics/purity.h"
#include "vcvts/pipeline/vts.h"

namespace vcvts {

/// Another clip of the same speaker, preferring the training split; throws
/// ContractError when the speaker has no other clip.
std::string SameSpeakerReference(const Manifest &manifest, const std::string &sample_id);

struct VtsEvalOptions {
  EvalOptions eval;
  SynthesisConfig synthesis;
  /// Control condition: clip i is synthesized from the lips of clip i+1 of
  /// the split (cyclically), with clip i's reference.
  bool shuffled_lips = false;
};

/// Synthesizes every clip of `split` with a same-speaker reference and
/// scores it against the clip's recorded audio.
EvalReport EvaluateVts(VtsSystem &system, const Manifest &manifest, Split split,
                       const VtsEvalOptions &opts = {});

struct UnitAnalysis {
  PurityReport purity;
  SpeakerProjection speakers;
  std::vector<std::string> sample_ids;
  std::vector<std::string> speaker_names;  // label -> speaker id
  std::vector<int> speaker_labels;
  std::vector<std::vector<int>> indices;   // per clip, unit rate

  nlohmann::json ToJson() const;
};

/// Encodes every clip of `split` with the VC content encoder (purity against
/// the alignments) and the speaker encoder (projection and silhouette by
/// speaker).
UnitAnalysis AnalyzeUnits(VCModel &vc, const Manifest &manifest, Split split,
                          const AnalysisConfig &analysis = {}, const TsneConfig &tsne = {});

}  // namespace vcvts

#endif  // VCVTS_PIPELINE_EXPERIMENTS_H_
