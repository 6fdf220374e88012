// src/trainer/train-config.cc

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

#include "vcvts/trainer/train-config.h"

#include <cmath>
#include <numbers>

#include "vcvts/base/error.h"

namespace vcvts {

void VCTrainConfig::Validate() const {
  if (epochs < 1) throw ContractError("train-vc: epochs must be positive");
  if (warmup_epochs < 0 || warmup_epochs >= epochs)
    throw ContractError("train-vc: warmup_epochs must be in [0, epochs)");
  if (!(lr_start > 0.0 && lr_start < lr_peak))
    throw ContractError("train-vc: need 0 < lr_start < lr_peak");
  if (batch_size < 2) throw ContractError("train-vc: batch_size must be at least 2");
  if (crop_frames < 8 || crop_frames % 4 != 0)
    throw ContractError("train-vc: crop_frames must be a positive multiple of 4");
  if (grad_clip <= 0.0) throw ContractError("train-vc: grad_clip must be positive");
  if (threads < 1) throw ContractError("train-vc: threads must be positive");
}

void L2ITrainConfig::Validate() const {
  if (epochs < 1 || batch_size < 1 || lr_init <= 0.0 || weight_decay < 0.0 || threads < 1)
    throw ContractError("train-lip2ind: epochs, batch_size, lr_init and threads must be positive");
  if (crop_frames < 8 || crop_frames % 4 != 0)
    throw ContractError("train-lip2ind: crop_frames must be a positive multiple of 4");
}

double WarmupThenConstantLr(double epoch, const VCTrainConfig &cfg) {
  if (!(epoch >= 0.0 && epoch < cfg.epochs))
    throw ContractError("learning-rate schedule: epoch " + std::to_string(epoch) +
                        " outside [0, " + std::to_string(cfg.epochs) + ")");
  if (epoch >= cfg.warmup_epochs) return cfg.lr_peak;
  return cfg.lr_start + (cfg.lr_peak - cfg.lr_start) * epoch / cfg.warmup_epochs;
}

double CosineLr(double epoch, const L2ITrainConfig &cfg) {
  if (!(epoch >= 0.0 && epoch < cfg.epochs))
    throw ContractError("learning-rate schedule: epoch " + std::to_string(epoch) +
                        " outside [0, " + std::to_string(cfg.epochs) + ")");
  return cfg.lr_init * 0.5 * (1.0 + std::cos(std::numbers::pi * epoch / cfg.epochs));
}

void to_json(nlohmann::json &j, const VCTrainConfig &c) {
  j = {{"epochs", c.epochs},         {"warmup_epochs", c.warmup_epochs},
       {"lr_start", c.lr_start},     {"lr_peak", c.lr_peak},
       {"batch_size", c.batch_size}, {"seed", c.seed},
       {"crop_frames", c.crop_frames}, {"grad_clip", c.grad_clip},
       {"threads", c.threads}};
}

void from_json(const nlohmann::json &j, VCTrainConfig &c) {
  c.epochs = j.value("epochs", c.epochs);
  c.warmup_epochs = j.value("warmup_epochs", c.warmup_epochs);
  c.lr_start = j.value("lr_start", c.lr_start);
  c.lr_peak = j.value("lr_peak", c.lr_peak);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.seed = j.value("seed", c.seed);
  c.crop_frames = j.value("crop_frames", c.crop_frames);
  c.grad_clip = j.value("grad_clip", c.grad_clip);
  c.threads = j.value("threads", c.threads);
}

void to_json(nlohmann::json &j, const L2ITrainConfig &c) {
  j = {{"epochs", c.epochs},         {"lr_init", c.lr_init},
       {"weight_decay", c.weight_decay}, {"batch_size", c.batch_size},
       {"seed", c.seed},             {"crop_frames", c.crop_frames},
       {"threads", c.threads}};
}

void from_json(const nlohmann::json &j, L2ITrainConfig &c) {
  c.epochs = j.value("epochs", c.epochs);
  c.lr_init = j.value("lr_init", c.lr_init);
  c.weight_decay = j.value("weight_decay", c.weight_decay);
  c.batch_size = j.value("batch_size", c.batch_size);
  c.seed = j.value("seed", c.seed);
  c.crop_frames = j.value("crop_frames", c.crop_frames);
  c.threads = j.value("threads", c.threads);
}

}  // namespace vcvts
