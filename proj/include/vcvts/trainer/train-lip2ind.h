// include/vcvts/trainer/train-lip2ind.h

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

#ifndef VCVTS_TRAINER_TRAIN_LIP2IND_H_
#define VCVTS_TRAINER_TRAIN_LIP2IND_H_

#include <cstdint>
#include <string>
#include <vector>

#include "vcvts/corpus/av-sample.h"
#include "vcvts/corpus/manifest.h"
#include "vcvts/lip2ind/lip2ind-model.h"
#include "vcvts/lip2ind/target-store.h"
#include "vcvts/media/analysis-config.h"
#include "vcvts/trainer/checkpoint.h"
#include "vcvts/trainer/train-config.h"

namespace vcvts {

struct L2IEpochRecord {
  int epoch = 0;
  double lr = 0;
  double train_loss = 0;
  double dev_accuracy = 0;
};

struct L2ITrainOptions {
  std::string out_dir;  // best.ckpt, last.ckpt and train-lip2ind.jsonl go here
  Lip2IndConfig model;
  AnalysisConfig analysis;
  /// Checksum of the VC codebook the targets must come from.
  std::uint64_t expected_checksum = 0;
};

struct L2ITrainResult {
  std::vector<L2IEpochRecord> history;
  int best_epoch = 0;
  double best_dev_accuracy = 0;
  std::string best_checkpoint;
  std::string last_checkpoint;
};

/// Adam with weight decay and the cosine schedule on the transfer loss, with
/// crop/flip augmentation and mixup.  Keeps the best dev frame accuracy.
L2ITrainResult TrainLip2Ind(const Manifest &manifest, const TargetStore &targets,
                            const L2ITrainConfig &cfg, const L2ITrainOptions &opts);

/// Fraction of unit frames whose argmax index equals the stored target,
/// over full-length clips in eval mode.
double FrameAccuracy(Lip2Ind &model, const std::vector<AVSample> &data,
                     const TargetStore &targets);

/// Rebuilds a model from a "lip2ind" checkpoint, in eval mode.
Lip2Ind LoadLip2IndModel(const std::string &path, Checkpoint *meta = nullptr);
Lip2Ind Lip2IndFromCheckpoint(const Checkpoint &ckpt);

}  // namespace vcvts

#endif  // VCVTS_TRAINER_TRAIN_LIP2IND_H_
