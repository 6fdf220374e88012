// src/trainer/train-lip2ind.cc

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

#include "vcvts/trainer/train-lip2ind.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include <torch/torch.h>

#include "vcvts/base/checksum.h"
#include "vcvts/base/error.h"
#include "vcvts/base/log.h"
#include "vcvts/corpus/batch-iterator.h"
#include "vcvts/lip2ind/augment.h"
#include "vcvts/lip2ind/transfer.h"

namespace vcvts {

namespace fs = std::filesystem;

namespace {

// Unit-rate targets [K, crop/2] following the iterator's crop and repeat.
torch::Tensor CropTargets(const Batch &batch, const std::vector<AVSample> &data,
                          const TargetStore &targets, int crop_units) {
  auto out = torch::empty({batch.size(), crop_units}, torch::kInt64);
  auto a = out.accessor<int64_t, 2>();
  for (int i = 0; i < batch.size(); ++i) {
    const std::vector<int> &seq = targets.At(data[batch.items[i]].sample_id);
    const int n = static_cast<int>(seq.size());
    for (int u = 0; u < crop_units; ++u) a[i][u] = seq[(batch.starts[i] / 2 + u) % n];
  }
  return out;
}

void CheckTargets(const std::vector<AVSample> &data, const TargetStore &targets) {
  for (const AVSample &s : data) {
    const auto &seq = targets.At(s.sample_id);
    if (static_cast<int>(seq.size()) != 2 * s.lips.num_frames)
      throw ContractError("targets for " + s.sample_id + " have " + std::to_string(seq.size()) +
                          " frames, expected " + std::to_string(2 * s.lips.num_frames));
  }
}

}  // namespace

double FrameAccuracy(Lip2Ind &model, const std::vector<AVSample> &data,
                     const TargetStore &targets) {
  const bool was_training = model->is_training();
  model->eval();
  long correct = 0, total = 0;
  for (const AVSample &s : data) {
    const auto pred = PredictIndices(model->Posteriors(s.lips));
    const auto &seq = targets.At(s.sample_id);
    const auto t = torch::tensor(std::vector<int64_t>(seq.begin(), seq.end()), torch::kInt64);
    if (t.size(0) != pred.size(0)) throw ContractError("target length mismatch for " + s.sample_id);
    correct += (pred == t).sum().item<int64_t>();
    total += t.size(0);
  }
  model->train(was_training);
  return total ? static_cast<double>(correct) / total : 0.0;
}

Lip2Ind Lip2IndFromCheckpoint(const Checkpoint &ckpt) {
  if (ckpt.kind != "lip2ind")
    throw FormatError("expected a Lip2Ind checkpoint, found '" + ckpt.kind + "'");
  Lip2Ind model(ckpt.config.at("model").get<Lip2IndConfig>());
  LoadModuleState(*model, ckpt.tensors);
  model->eval();
  return model;
}

Lip2Ind LoadLip2IndModel(const std::string &path, Checkpoint *meta) {
  Checkpoint ckpt = LoadCheckpoint(path);
  Lip2Ind model = Lip2IndFromCheckpoint(ckpt);
  if (meta) *meta = std::move(ckpt);
  return model;
}

L2ITrainResult TrainLip2Ind(const Manifest &manifest, const TargetStore &targets,
                            const L2ITrainConfig &cfg, const L2ITrainOptions &opts) {
  cfg.Validate();
  if (targets.codebook_checksum != opts.expected_checksum)
    throw ChecksumError("index targets come from codebook " + HexU64(targets.codebook_checksum) +
                        " but the VC checkpoint has " + HexU64(opts.expected_checksum));
  if (targets.num_codes != opts.model.num_codes)
    throw ContractError("targets have " + std::to_string(targets.num_codes) +
                        " codes, model expects " + std::to_string(opts.model.num_codes));
  torch::set_num_threads(cfg.threads);
  const std::vector<AVSample> train = LoadSplit(manifest, Split::kTrain, opts.analysis);
  const std::vector<AVSample> dev = LoadSplit(manifest, Split::kDev, opts.analysis);
  if (train.empty()) throw ContractError("train-lip2ind: the train split is empty");
  CheckTargets(train, targets);
  CheckTargets(dev, targets);
  fs::create_directories(opts.out_dir);
  const fs::path out(opts.out_dir);

  torch::manual_seed(cfg.seed);
  Lip2Ind model(opts.model);
  model->train();
  torch::optim::Adam opt(model->parameters(),
                         torch::optim::AdamOptions(cfg.lr_init).weight_decay(cfg.weight_decay));

  BatchOptions bo;
  bo.batch_size = cfg.batch_size;
  bo.crop_frames = cfg.crop_frames;
  bo.seed = cfg.seed;
  bo.with_lips = true;
  bo.drop_last = cfg.batch_size > 1 && static_cast<int>(train.size()) % cfg.batch_size == 1;
  const BatchIterator iterator(train, bo);
  const int crop_units = cfg.crop_frames / 2;
  const AugmentConfig &aug = opts.model.augment;
  const bool mixup = aug.enabled && aug.mixup_alpha > 0.0;

  std::ofstream log(out / "train-lip2ind.jsonl");
  if (!log) throw IoError("cannot write " + (out / "train-lip2ind.jsonl").string());
  L2ITrainResult result;
  result.best_checkpoint = (out / "best.ckpt").string();
  result.last_checkpoint = (out / "last.ckpt").string();
  result.best_dev_accuracy = -1.0;
  std::uint64_t step = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    L2IEpochRecord rec;
    rec.epoch = epoch + 1;
    rec.lr = CosineLr(epoch, cfg);
    for (auto &group : opt.param_groups())
      static_cast<torch::optim::AdamOptions &>(group.options()).lr(rec.lr);
    int b = 0;
    for (const Batch &batch : iterator.Epoch(epoch)) {
      const std::uint64_t s = cfg.seed * 0x9e3779b97f4a7c15ULL + (++step);
      auto lips = AugmentBatch(batch.lips, aug, /*training=*/true, s);
      auto soft = OneHotTargets(CropTargets(batch, train, targets, crop_units), opts.model.num_codes);
      if (mixup) {
        const MixedPair m = MixupBatch(lips, soft, aug.mixup_alpha, s ^ 0x5bd1e995ULL);
        lips = m.lips;
        soft = m.targets;
      }
      const auto unit_mask = batch.mask.view({batch.size(), -1, 2}).select(2, 0);
      const auto logits = model(lips);
      const auto loss = TransferLossFromLogits(logits.index({unit_mask}).unsqueeze(0),
                                               soft.index({unit_mask}).unsqueeze(0));
      if (!std::isfinite(loss.item<double>()))
        throw DivergenceError("train-lip2ind: non-finite loss at epoch " +
                              std::to_string(epoch + 1) + " step " + std::to_string(b));
      opt.zero_grad();
      loss.backward();
      opt.step();
      rec.train_loss += loss.item<double>();
      ++b;
    }
    rec.train_loss /= b;
    rec.dev_accuracy = dev.empty() ? 0.0 : FrameAccuracy(model, dev, targets);
    log << nlohmann::json{{"epoch", rec.epoch},
                          {"lr", rec.lr},
                          {"train_loss", rec.train_loss},
                          {"dev_accuracy", rec.dev_accuracy}}
               .dump()
        << "\n"
        << std::flush;
    LogInfo(StrFormat("train-lip2ind epoch %d/%d lr %.2e loss %.4f dev acc %.4f", rec.epoch,
                      cfg.epochs, rec.lr, rec.train_loss, rec.dev_accuracy));
    result.history.push_back(rec);

    Checkpoint ckpt;
    ckpt.kind = "lip2ind";
    ckpt.config = {{"model", opts.model}, {"train", cfg}};
    ckpt.epoch = rec.epoch;
    ckpt.seed = cfg.seed;
    ckpt.codebook_checksum = targets.codebook_checksum;
    ckpt.metrics = {{"train_loss", rec.train_loss}, {"dev_accuracy", rec.dev_accuracy}};
    ckpt.tensors = ModuleState(*model);
    if (rec.dev_accuracy > result.best_dev_accuracy) {
      result.best_dev_accuracy = rec.dev_accuracy;
      result.best_epoch = rec.epoch;
      SaveCheckpoint(ckpt, result.best_checkpoint);
    }
    SaveCheckpoint(ckpt, result.last_checkpoint);
  }
  model->eval();
  return result;
}

}  // namespace vcvts
