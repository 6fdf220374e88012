// include/vcvts/trainer/train-config.h

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

#ifndef VCVTS_TRAINER_TRAIN_CONFIG_H_
#define VCVTS_TRAINER_TRAIN_CONFIG_H_

#include <cstdint>

#include <nlohmann/json.hpp>

namespace vcvts {

struct VCTrainConfig {
  int epochs = 40;
  int warmup_epochs = 15;
  double lr_start = 1e-6;
  double lr_peak = 1e-3;
  int batch_size = 32;
  std::uint64_t seed = 0;
  int crop_frames = 96;
  double grad_clip = 5.0;
  int threads = 1;

  void Validate() const;
};

struct L2ITrainConfig {
  int epochs = 30;
  double lr_init = 3e-4;
  double weight_decay = 1e-4;
  int batch_size = 32;
  std::uint64_t seed = 0;
  int crop_frames = 96;  // mel frames; lips use crop_frames / 4
  int threads = 1;

  void Validate() const;
};

/// Linear from lr_start at epoch 0 to lr_peak at warmup_epochs, constant
/// after.  `epoch` may be fractional (per-step updates).
double WarmupThenConstantLr(double epoch, const VCTrainConfig &cfg);

/// lr_init * (1 + cos(pi * epoch / epochs)) / 2.
double CosineLr(double epoch, const L2ITrainConfig &cfg);

void to_json(nlohmann::json &j, const VCTrainConfig &c);
void from_json(const nlohmann::json &j, VCTrainConfig &c);
void to_json(nlohmann::json &j, const L2ITrainConfig &c);
void from_json(const nlohmann::json &j, L2ITrainConfig &c);

}  // namespace vcvts

#endif  // VCVTS_TRAINER_TRAIN_CONFIG_H_
