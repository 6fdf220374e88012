// include/vcvts/pipeline/vts.h

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

#ifndef VCVTS_PIPELINE_VTS_H_
#define VCVTS_PIPELINE_VTS_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vcvts/lip2ind/lip2ind-model.h"
#include "vcvts/media/analysis-config.h"
#include "vcvts/media/lip-sequence.h"
#include "vcvts/media/mel-spectrogram.h"
#include "vcvts/media/waveform.h"
#include "vcvts/vc/vc-model.h"

namespace vcvts {

/// Codebook rows for `indices`, bit-identical; ContractError outside [0, N).
torch::Tensor LookupUnits(const std::vector<int> &indices, const Codebook &codebook);

/// The voice-conversion model and the lip classifier trained on its codebook.
struct VtsSystem {
  VCModel vc{nullptr};
  Lip2Ind lip2ind{nullptr};
};

/// Loads both checkpoints; ChecksumError when the Lip2Ind checkpoint was
/// trained on targets from a different codebook.
VtsSystem LoadVtsSystem(const std::string &vc_checkpoint, const std::string &lip2ind_checkpoint);

/// Same check for already loaded models.
void CheckCompatible(VCModel &vc, std::uint64_t lip2ind_codebook_checksum);

struct SynthesisConfig {
  AnalysisConfig analysis;
  double min_reference_sec = 0.5;
  bool sample_indices = false;  // draw from the posteriors instead of argmax
  std::uint64_t sample_seed = 0;
};

struct SynthesisDiagnostics {
  std::vector<int> indices;
  std::vector<float> speaker_embedding;
  std::vector<float> f0_normalized;  // predicted, unit rate
  std::vector<float> f0_hz;          // denormalized with the reference's log-F0 statistics
  MelSpectrogram mel;
  double seconds = 0.0;

  nlohmann::json ToJson() const;
};

struct SynthesisResult {
  Waveform wave;
  SynthesisDiagnostics diagnostics;
};

/// Lips -> indices -> codewords; reference -> speaker embedding; predicted
/// F0; decoder mel; Griffin-Lim.
SynthesisResult Synthesize(VtsSystem &system, const LipSequence &lips, const Waveform &reference,
                           const SynthesisConfig &cfg = {});

/// Source content with the reference's voice.  The decoder receives the
/// source's own normalized log-F0 contour.
SynthesisResult ConvertVoice(VCModel &vc, const Waveform &source, const Waveform &reference,
                             const SynthesisConfig &cfg = {});

}  // namespace vcvts

#endif  // VCVTS_PIPELINE_VTS_H_
