// tests/unit/trainer-test.cc

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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "torch-doctest.h"

#include "vcvts/base/error.h"
#include "vcvts/corpus/synthetic-corpus.h"
#include "vcvts/trainer/checkpoint.h"
#include "vcvts/trainer/train-config.h"
#include "vcvts/trainer/train-lip2ind.h"
#include "vcvts/trainer/train-vc.h"

using namespace vcvts;
namespace fs = std::filesystem;

namespace {

fs::path TempDir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("vcvts-trainer-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string Slurp(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

void Spit(const fs::path &p, const std::string &s) {
  std::ofstream os(p, std::ios::binary);
  os << s;
}

VCConfig TinyVC() {
  VCConfig c;
  c.hnet_hidden1 = 32;
  c.hnet_hidden2 = 32;
  c.codebook_size = 16;
  c.code_dim = 8;
  c.context_dim = 16;
  c.speaker_dim = 16;
  c.speaker_hidden = 16;
  c.mi_hidden = 16;
  c.pitch_channels = 16;
  c.decoder_dim = 16;
  c.decoder_blocks = 1;
  c.decoder_ffn = 32;
  c.decoder_kernel = 7;
  return c;
}

// 2 speakers x 4 clips: 6 train, 1 dev, 1 test.
const Manifest &SmallCorpus() {
  static const Manifest m = [] {
    SynthConfig cfg;
    cfg.num_speakers = 2;
    cfg.clips_per_speaker = 4;
    return GenerateSyntheticCorpus(cfg, TempDir("corpus").string());
  }();
  return m;
}

VCTrainConfig SmokeVC() {
  VCTrainConfig c;
  c.epochs = 2;
  c.warmup_epochs = 1;
  c.batch_size = 4;
  c.crop_frames = 48;
  c.seed = 3;
  return c;
}

}  // namespace

TEST_CASE("learning-rate schedules") {
  const VCTrainConfig vc{150, 15};
  CHECK(WarmupThenConstantLr(0, vc) == 1e-6);
  CHECK(WarmupThenConstantLr(15, vc) == 1e-3);
  CHECK(WarmupThenConstantLr(7.5, vc) == doctest::Approx(5.005e-4).epsilon(1e-12));
  CHECK(WarmupThenConstantLr(100, vc) == 1e-3);
  CHECK_THROWS_AS(WarmupThenConstantLr(150, vc), ContractError);
  CHECK_THROWS_AS(WarmupThenConstantLr(-1, vc), ContractError);

  L2ITrainConfig l2i;
  l2i.epochs = 80;
  CHECK(CosineLr(0, l2i) == 3e-4);
  CHECK(CosineLr(40, l2i) == doctest::Approx(1.5e-4).epsilon(1e-12));
  for (int e = 1; e < 80; ++e) CHECK(CosineLr(e, l2i) <= CosineLr(e - 1, l2i));
  CHECK_THROWS_AS(CosineLr(80, l2i), ContractError);

  VCTrainConfig bad;
  bad.warmup_epochs = bad.epochs;
  CHECK_THROWS_AS(bad.Validate(), ContractError);
}

TEST_CASE("checkpoint round trip and damage") {
  const fs::path dir = TempDir("ckpt");
  torch::manual_seed(1);
  VCModel model(TinyVC());
  model->eval();
  Checkpoint ckpt = MakeVCCheckpoint(model, VCTrainConfig{}, 7);
  ckpt.metrics = {{"note", "x"}};
  SaveCheckpoint(ckpt, (dir / "a.ckpt").string());
  Checkpoint meta;
  VCModel back = LoadVCModel((dir / "a.ckpt").string(), &meta);
  CHECK(meta.epoch == 7);
  CHECK(meta.codebook_checksum == model->codebook->Checksum());
  SaveCheckpoint(meta, (dir / "b.ckpt").string());
  CHECK(Slurp(dir / "a.ckpt") == Slurp(dir / "b.ckpt"));

  const auto p1 = model->named_parameters(), p2 = back->named_parameters();
  for (const auto &item : p1) CHECK(torch::equal(item.value(), p2[item.key()]));
  MelSpectrogram mel;
  mel.frames = FrameMatrix::Random(64, 80);
  const Quantized q = model->Encode(mel);
  const auto s = model->SpeakerEmbed(mel);
  const auto f0 = model->PredictF0(q.frames, s);
  CHECK(model->Decode(q.frames, s, f0).frames == back->Decode(q.frames, s, f0).frames);

  const std::string bytes = Slurp(dir / "a.ckpt");
  Spit(dir / "trunc.ckpt", bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(LoadCheckpoint((dir / "trunc.ckpt").string()), ChecksumError);
  std::string flipped = bytes;
  flipped[bytes.size() / 2] ^= 0x10;
  Spit(dir / "flip.ckpt", flipped);
  CHECK_THROWS_AS(LoadCheckpoint((dir / "flip.ckpt").string()), ChecksumError);
  std::string v2 = bytes;
  v2[4] = 2;
  Spit(dir / "v2.ckpt", v2);
  CHECK_THROWS_AS(LoadCheckpoint((dir / "v2.ckpt").string()), VersionError);
  Spit(dir / "junk.ckpt", "hello");
  CHECK_THROWS_AS(LoadCheckpoint((dir / "junk.ckpt").string()), FormatError);
  CHECK_THROWS_AS(LoadCheckpoint((dir / "none.ckpt").string()), IoError);
  fs::remove_all(dir);
}

TEST_CASE("train-vc smoke run is finite, logged and reproducible") {
  const Manifest &m = SmallCorpus();
  VCTrainOptions opts;
  opts.model = TinyVC();
  opts.out_dir = TempDir("vc-a").string();
  const VCTrainResult a = TrainVC(m, SmokeVC(), opts);
  REQUIRE(a.history.size() == 2);
  for (const VCEpochRecord &r : a.history)
    for (double v : {r.train.vq, r.train.cpc, r.train.mi, r.train.f0, r.train.rec, r.train.total,
                     r.dev.total})
      CHECK(std::isfinite(v));
  std::ifstream log(fs::path(opts.out_dir) / "train-vc.jsonl");
  int lines = 0;
  for (std::string line; std::getline(log, line);) {
    const auto j = nlohmann::json::parse(line);
    CHECK(j.at("train").contains("rec"));
    ++lines;
  }
  CHECK(lines == 2);
  CHECK(fs::exists(a.best_checkpoint));

  opts.out_dir = TempDir("vc-b").string();
  const VCTrainResult b = TrainVC(m, SmokeVC(), opts);
  CHECK(b.history.back().dev.total == a.history.back().dev.total);
  CHECK(Slurp(a.last_checkpoint) == Slurp(b.last_checkpoint));

  // Index targets.
  VCModel model = LoadVCModel(a.best_checkpoint);
  const fs::path tdir = TempDir("targets");
  const TargetStore store = ExtractTargets(model, m, tdir.string());
  CHECK(store.indices.size() == m.entries.size());
  for (const auto &[id, seq] : store.indices) {
    CHECK(seq.size() == 60);
    for (int i : seq) {
      CHECK(i >= 0);
      CHECK(i < 16);
    }
  }
  const std::string first = Slurp(tdir / (m.entries[0].sample_id + ".idx"));
  ExtractTargets(model, m, tdir.string());
  CHECK(Slurp(tdir / (m.entries[0].sample_id + ".idx")) == first);
  VCModel other(TinyVC());
  other->eval();
  CHECK_THROWS_AS(ExtractTargets(other, m, tdir.string()), ChecksumError);

  // Lip2Ind on those targets.
  Lip2IndConfig lcfg;
  lcfg.width_multiplier = 0.125;
  lcfg.num_codes = 16;
  L2ITrainConfig tcfg;
  tcfg.epochs = 1;
  tcfg.batch_size = 3;
  tcfg.crop_frames = 32;
  L2ITrainOptions lopts;
  lopts.model = lcfg;
  lopts.out_dir = TempDir("l2i").string();
  lopts.expected_checksum = 0x1;
  CHECK_THROWS_AS(TrainLip2Ind(m, store, tcfg, lopts), ChecksumError);
  lopts.expected_checksum = model->codebook->Checksum();
  const L2ITrainResult r = TrainLip2Ind(m, store, tcfg, lopts);
  REQUIRE(r.history.size() == 1);
  CHECK(std::isfinite(r.history[0].train_loss));
  CHECK(r.history[0].dev_accuracy >= 0.0);
  CHECK(r.history[0].dev_accuracy <= 1.0);
  Checkpoint lmeta;
  Lip2Ind lip = LoadLip2IndModel(r.best_checkpoint, &lmeta);
  CHECK(lmeta.codebook_checksum == model->codebook->Checksum());

  // The augmentation flag does not touch the eval path.
  Lip2IndConfig off = lcfg;
  off.augment.enabled = false;
  Lip2Ind plain(off);
  LoadModuleState(*plain, ModuleState(*lip));
  plain->eval();
  const std::vector<AVSample> dev = LoadSplit(m, Split::kDev);
  CHECK(torch::equal(plain->Posteriors(dev[0].lips), lip->Posteriors(dev[0].lips)));
}
