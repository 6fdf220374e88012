// src/trainer/train-vc.cc

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

#include "vcvts/trainer/train-vc.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include <torch/torch.h>

#include "vcvts/base/checksum.h"
#include "vcvts/base/error.h"
#include "vcvts/base/log.h"

namespace vcvts {

namespace fs = std::filesystem;

namespace {

std::uint64_t StepSeed(std::uint64_t seed, std::int64_t step) {
  return seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(step) + 1;
}

void Accumulate(EpochLosses &acc, const VCStep &step) {
  const LossComponents &c = step.components;
  acc.vq += c.vq.item<double>();
  acc.cpc += c.cpc.item<double>();
  acc.mi += c.mi.item<double>();
  acc.f0 += c.f0.item<double>();
  acc.rec += c.rec.item<double>();
  acc.total += step.total.item<double>();
}

void Scale(EpochLosses &acc, int n) {
  for (double *v : {&acc.vq, &acc.cpc, &acc.mi, &acc.f0, &acc.rec, &acc.total}) *v /= n;
}

std::string Describe(const LossComponents &c) {
  auto f = [](const torch::Tensor &t) { return std::to_string(t.item<double>()); };
  return "vq=" + f(c.vq) + " cpc=" + f(c.cpc) + " mi=" + f(c.mi) + " f0=" + f(c.f0) +
         " rec=" + f(c.rec);
}

void SetLr(torch::optim::Adam &opt, double lr) {
  for (auto &group : opt.param_groups())
    static_cast<torch::optim::AdamOptions &>(group.options()).lr(lr);
}

}  // namespace

nlohmann::json EpochLosses::ToJson() const {
  return {{"vq", vq}, {"cpc", cpc}, {"mi", mi}, {"f0", f0}, {"rec", rec}, {"total", total}};
}

std::pair<torch::Tensor, torch::Tensor> MelStats(const std::vector<AVSample> &data) {
  if (data.empty()) throw ContractError("mel stats: no data");
  const int bins = data.front().mel.NumBins();
  Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(bins), sum_sq = Eigen::ArrayXd::Zero(bins);
  double n = 0;
  for (const AVSample &s : data) {
    const Eigen::ArrayXXd f = s.mel.frames.cast<double>().array();
    sum += f.colwise().sum().transpose();
    sum_sq += f.square().colwise().sum().transpose();
    n += f.rows();
  }
  auto mean = torch::empty({bins}), sd = torch::empty({bins});
  for (int b = 0; b < bins; ++b) {
    const double m = sum[b] / n;
    mean[b] = m;
    sd[b] = std::sqrt(std::max(sum_sq[b] / n - m * m, 1e-12));
  }
  return {mean, sd};
}

EpochLosses EvaluateVC(VCModel &model, const std::vector<AVSample> &data, int crop_frames,
                       int batch_size, std::uint64_t seed) {
  const bool was_training = model->is_training();
  model->eval();
  torch::NoGradGuard guard;
  BatchOptions bo;
  bo.batch_size = batch_size;
  bo.crop_frames = crop_frames;
  bo.seed = seed;
  EpochLosses acc;
  int n = 0;
  std::int64_t b = 0;
  for (const Batch &batch : BatchIterator(data, bo).Epoch(0)) {
    Accumulate(acc, model->Forward(batch, StepSeed(seed, b++)));
    ++n;
  }
  Scale(acc, n);
  model->train(was_training);
  return acc;
}

Checkpoint MakeVCCheckpoint(VCModel &model, const VCTrainConfig &cfg, int epoch) {
  Checkpoint ckpt;
  ckpt.kind = "vc";
  ckpt.config = {{"model", model->Config()}, {"train", cfg}};
  ckpt.epoch = epoch;
  ckpt.seed = cfg.seed;
  ckpt.codebook_checksum = model->codebook->Checksum();
  ckpt.tensors = ModuleState(*model);
  return ckpt;
}

VCModel VCModelFromCheckpoint(const Checkpoint &ckpt) {
  if (ckpt.kind != "vc") throw FormatError("expected a VC checkpoint, found '" + ckpt.kind + "'");
  VCModel model(ckpt.config.at("model").get<VCConfig>());
  LoadModuleState(*model, ckpt.tensors);
  model->eval();
  if (model->codebook->Checksum() != ckpt.codebook_checksum)
    throw ChecksumError("VC checkpoint codebook does not match its recorded checksum");
  return model;
}

VCModel LoadVCModel(const std::string &path, Checkpoint *meta) {
  Checkpoint ckpt = LoadCheckpoint(path);
  VCModel model = VCModelFromCheckpoint(ckpt);
  if (meta) *meta = std::move(ckpt);
  return model;
}

VCTrainResult TrainVC(const Manifest &manifest, const VCTrainConfig &cfg,
                      const VCTrainOptions &opts) {
  cfg.Validate();
  torch::set_num_threads(cfg.threads);
  const std::vector<AVSample> train = LoadSplit(manifest, Split::kTrain, opts.analysis);
  const std::vector<AVSample> dev = LoadSplit(manifest, Split::kDev, opts.analysis);
  if (train.empty()) throw ContractError("train-vc: the train split is empty");
  fs::create_directories(opts.out_dir);
  const fs::path out(opts.out_dir);

  torch::manual_seed(cfg.seed);
  VCModel model(opts.model);
  const auto [mean, sd] = MelStats(train);
  model->SetMelStats(mean, sd);
  model->train();

  torch::optim::Adam main_opt(model->MainParameters(), torch::optim::AdamOptions(cfg.lr_start));
  torch::optim::Adam mi_opt(model->mi_estimator->parameters(),
                            torch::optim::AdamOptions(cfg.lr_start));
  std::mt19937_64 rng(cfg.seed);

  BatchOptions bo;
  bo.batch_size = cfg.batch_size;
  bo.crop_frames = cfg.crop_frames;
  bo.seed = cfg.seed;
  bo.drop_last = static_cast<int>(train.size()) % cfg.batch_size == 1;
  const BatchIterator iterator(train, bo);
  const int steps = iterator.NumBatches();

  // Seed the codebook from encoder outputs of the first batch.
  {
    torch::NoGradGuard guard;
    const Batch first = iterator.Epoch(0).front();
    const auto z = model->h_net(model->NormalizeMel(first.mel));
    const auto um = first.mask.view({first.size(), -1, 2}).select(2, 0);
    model->codebook->EmaUpdate(z.index({um}), torch::zeros({um.sum().item<int64_t>()}, torch::kInt64),
                               rng);
  }

  std::ofstream log(out / "train-vc.jsonl");
  if (!log) throw IoError("cannot write " + (out / "train-vc.jsonl").string());
  VCTrainResult result;
  result.best_checkpoint = (out / "best.ckpt").string();
  result.last_checkpoint = (out / "last.ckpt").string();
  double best_dev = std::numeric_limits<double>::infinity();
  std::int64_t global_step = 0;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    VCEpochRecord rec;
    rec.epoch = epoch + 1;
    std::vector<bool> used(model->codebook->NumCodes(), false);
    int b = 0;
    for (const Batch &batch : iterator.Epoch(epoch)) {
      const double lr = WarmupThenConstantLr(epoch + static_cast<double>(b) / steps, cfg);
      SetLr(main_opt, lr);
      SetLr(mi_opt, lr);
      rec.lr = lr;
      const VCStep step = model->Forward(batch, StepSeed(cfg.seed, global_step));
      if (!std::isfinite(step.total.item<double>()))
        throw DivergenceError("train-vc: non-finite loss at epoch " + std::to_string(epoch + 1) +
                              " step " + std::to_string(b) + ": " + Describe(step.components));
      main_opt.zero_grad();
      mi_opt.zero_grad();
      step.total.backward();
      mi_opt.zero_grad();
      step.mi_estimator_loss.backward();
      torch::nn::utils::clip_grad_norm_(model->MainParameters(), cfg.grad_clip);
      main_opt.step();
      mi_opt.step();
      {
        torch::NoGradGuard guard;
        const auto z = step.z.detach().index({step.unit_mask});
        const auto idx = step.indices.index({step.unit_mask});
        model->codebook->EmaUpdate(z, idx, rng);
        rec.codes_reseeded += model->codebook->ReseedDeadCodes(z, rng);
        for (auto i : std::vector<int64_t>(idx.data_ptr<int64_t>(), idx.data_ptr<int64_t>() + idx.numel()))
          used[i] = true;
      }
      Accumulate(rec.train, step);
      ++b;
      ++global_step;
    }
    Scale(rec.train, b);
    rec.codes_used = static_cast<int>(std::count(used.begin(), used.end(), true));
    if (!dev.empty())
      rec.dev = EvaluateVC(model, dev, cfg.crop_frames, cfg.batch_size, cfg.seed + 1);
    else
      rec.dev = rec.train;

    log << nlohmann::json{{"epoch", rec.epoch},          {"lr", rec.lr},
                          {"train", rec.train.ToJson()}, {"dev", rec.dev.ToJson()},
                          {"codes_used", rec.codes_used}, {"codes_reseeded", rec.codes_reseeded}}
               .dump()
        << "\n"
        << std::flush;
    LogInfo(StrFormat("train-vc epoch %d/%d lr %.2e train rec %.4f total %.4f | dev total %.4f | codes %d",
                      rec.epoch, cfg.epochs, rec.lr, rec.train.rec, rec.train.total, rec.dev.total,
                      rec.codes_used));
    result.history.push_back(rec);

    Checkpoint ckpt = MakeVCCheckpoint(model, cfg, rec.epoch);
    ckpt.metrics = {{"train", rec.train.ToJson()}, {"dev", rec.dev.ToJson()}};
    if (rec.dev.total < best_dev) {
      best_dev = rec.dev.total;
      result.best_epoch = rec.epoch;
      SaveCheckpoint(ckpt, result.best_checkpoint);
    }
    SaveCheckpoint(ckpt, result.last_checkpoint);
  }
  model->eval();
  return result;
}

TargetStore ExtractTargets(VCModel &model, const Manifest &manifest, const std::string &out_dir,
                           const AnalysisConfig &analysis, bool overwrite) {
  const std::uint64_t checksum = model->codebook->Checksum();
  if (!overwrite && fs::exists(fs::path(out_dir) / "targets.json"))
    LoadTargetStore(out_dir, checksum);  // throws on a different codebook
  model->eval();
  TargetStore store;
  store.codebook_checksum = checksum;
  store.num_codes = model->codebook->NumCodes();
  for (const ManifestEntry &e : manifest.entries) {
    const AVSample s = LoadSample(manifest, e.sample_id, analysis);
    const auto idx = model->Encode(s.mel).indices.contiguous();
    store.indices[e.sample_id] =
        std::vector<int>(idx.data_ptr<int64_t>(), idx.data_ptr<int64_t>() + idx.numel());
  }
  WriteTargetStore(store, out_dir);
  return store;
}

}  // namespace vcvts
