// include/vcvts/metrics/evaluation.h

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

#ifndef VCVTS_METRICS_EVALUATION_H_
#define VCVTS_METRICS_EVALUATION_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vcvts/media/analysis-config.h"
#include "vcvts/media/waveform.h"

namespace vcvts {

struct ClipScores {
  std::string sample_id;
  double stoi = 0.0;
  double estoi = 0.0;
  double mcd = 0.0;
  /// NaN when the clips share no voiced frame.
  double f0_rmse = 0.0;
  int co_voiced = 0;
  std::optional<double> pesq;
};

struct EvalReport {
  std::vector<ClipScores> rows;
  ClipScores mean;  // sample_id "mean"; f0_rmse averaged over finite rows

  nlohmann::json ToJson() const;
  std::string ToCsv() const;
};

struct EvalOptions {
  AnalysisConfig analysis;
  /// Executable run as `<pesq> <ref.wav> <deg.wav>`; its stdout must hold a
  /// single number.
  std::optional<std::string> pesq_executable;
  /// Scratch directory for the WAV files handed to the PESQ executable.
  std::string scratch_dir = ".";
};

/// Scores of one degraded clip against its ground truth.
ClipScores ScoreClip(const std::string &sample_id, const Waveform &reference,
                     const Waveform &degraded, const EvalOptions &opts);

/// Runs `system` on every id and scores the output against `reference(id)`.
EvalReport EvaluateSystem(const std::vector<std::string> &sample_ids,
                          const std::function<Waveform(const std::string &)> &reference,
                          const std::function<Waveform(const std::string &)> &system,
                          const EvalOptions &opts = {});

/// Writes `<prefix>.json` and `<prefix>.csv`.
void WriteEvalReport(const EvalReport &report, const std::string &prefix);

/// Runs the external PESQ executable on two WAV files.
double RunPesq(const std::string &executable, const std::string &ref_wav,
               const std::string &deg_wav);

}  // namespace vcvts

#endif  // VCVTS_METRICS_EVALUATION_H_
