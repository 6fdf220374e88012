// include/vcvts/trainer/train-vc.h

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

#ifndef VCVTS_TRAINER_TRAIN_VC_H_
#define VCVTS_TRAINER_TRAIN_VC_H_

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vcvts/corpus/av-sample.h"
#include "vcvts/corpus/manifest.h"
#include "vcvts/lip2ind/target-store.h"
#include "vcvts/media/analysis-config.h"
#include "vcvts/trainer/checkpoint.h"
#include "vcvts/trainer/train-config.h"
#include "vcvts/vc/vc-model.h"

namespace vcvts {

struct EpochLosses {
  double vq = 0, cpc = 0, mi = 0, f0 = 0, rec = 0, total = 0;
  nlohmann::json ToJson() const;
};

struct VCEpochRecord {
  int epoch = 0;
  double lr = 0;
  EpochLosses train, dev;
  int codes_used = 0;
  int codes_reseeded = 0;
};

struct VCTrainOptions {
  std::string out_dir;  // best.ckpt, last.ckpt and train-vc.jsonl go here
  VCConfig model;
  AnalysisConfig analysis;
};

struct VCTrainResult {
  std::vector<VCEpochRecord> history;
  int best_epoch = 0;
  std::string best_checkpoint;
  std::string last_checkpoint;
};

/// Adam on the total loss with the warmup schedule, one estimator ascent
/// step per batch, EMA codebook updates and dead-code reseeding.  Keeps the
/// checkpoint with the lowest dev total loss.
VCTrainResult TrainVC(const Manifest &manifest, const VCTrainConfig &cfg,
                      const VCTrainOptions &opts);

/// Mean loss components over fixed crops of `data` in eval mode.
EpochLosses EvaluateVC(VCModel &model, const std::vector<AVSample> &data, int crop_frames,
                       int batch_size, std::uint64_t seed);

/// Per-bin mean and standard deviation of the log-mel frames in `data`.
std::pair<torch::Tensor, torch::Tensor> MelStats(const std::vector<AVSample> &data);

Checkpoint MakeVCCheckpoint(VCModel &model, const VCTrainConfig &cfg, int epoch);

/// Rebuilds a model from a "vc" checkpoint, in eval mode.
VCModel LoadVCModel(const std::string &path, Checkpoint *meta = nullptr);
VCModel VCModelFromCheckpoint(const Checkpoint &ckpt);

/// Full-length index sequences for every manifest entry.  An existing store
/// in `out_dir` from another codebook is refused with ChecksumError unless
/// `overwrite` is set.
TargetStore ExtractTargets(VCModel &model, const Manifest &manifest, const std::string &out_dir,
                           const AnalysisConfig &analysis = {}, bool overwrite = false);

}  // namespace vcvts

#endif  // VCVTS_TRAINER_TRAIN_VC_H_
