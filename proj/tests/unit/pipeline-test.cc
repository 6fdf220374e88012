// tests/unit/pipeline-test.cc

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

#include <filesystem>
#include <map>

#include "torch-doctest.h"

#include "vcvts/base/error.h"
#include "vcvts/corpus/synthetic-corpus.h"
#include "vcvts/pipeline/vts.h"
#include "vcvts/trainer/checkpoint.h"
#include "vcvts/trainer/train-vc.h"

using namespace vcvts;
namespace fs = std::filesystem;

namespace {

VCConfig TinyVC() {
  VCConfig c;
  c.hnet_hidden1 = 24;
  c.hnet_hidden2 = 20;
  c.codebook_size = 16;
  c.code_dim = 8;
  c.context_dim = 12;
  c.speaker_dim = 10;
  c.speaker_hidden = 12;
  c.mi_hidden = 16;
  c.pitch_channels = 16;
  c.decoder_dim = 16;
  c.decoder_blocks = 1;
  c.decoder_heads = 2;
  c.decoder_ffn = 32;
  c.decoder_kernel = 7;
  return c;
}

Lip2IndConfig TinyLip2Ind() {
  Lip2IndConfig c;
  c.num_codes = 16;
  c.width_multiplier = 0.125;
  c.augment.crop_size = 16;
  return c;
}

VtsSystem TinySystem() {
  torch::manual_seed(41);
  VtsSystem sys{VCModel(TinyVC()), Lip2Ind(TinyLip2Ind())};
  sys.vc->eval();
  sys.lip2ind->eval();
  return sys;
}

const SyntheticClip &Clip(int speaker, int clip) {
  static std::map<std::pair<int, int>, SyntheticClip> cache;
  auto it = cache.find({speaker, clip});
  if (it == cache.end()) it = cache.emplace(std::pair{speaker, clip}, RenderClip(SynthConfig{}, speaker, clip)).first;
  return it->second;
}

fs::path TempDir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("vcvts-pipeline-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("lookup units returns codebook rows") {
  VtsSystem sys = TinySystem();
  const std::vector<int> idx = {3, 0, 15, 3};
  const auto u = LookupUnits(idx, sys.vc->codebook);
  REQUIRE(u.size(0) == 4);
  for (int i = 0; i < 4; ++i) CHECK(torch::equal(u[i], sys.vc->codebook->entries[idx[i]]));
  CHECK(LookupUnits({}, sys.vc->codebook).size(0) == 0);
  CHECK_THROWS_AS(LookupUnits({16}, sys.vc->codebook), ContractError);
  CHECK_THROWS_AS(LookupUnits({-1}, sys.vc->codebook), ContractError);
}

TEST_CASE("synthesize: lengths for every lip length") {
  VtsSystem sys = TinySystem();
  const SyntheticClip &c = Clip(0, 0);
  for (int L : {1, 2, 7, 30}) {
    LipSequence lips(L, c.lips.height, c.lips.width);
    std::copy_n(c.lips.pixels.begin(), lips.pixels.size(), lips.pixels.begin());
    const SynthesisResult r = Synthesize(sys, lips, c.wave);
    CHECK(r.diagnostics.indices.size() == static_cast<std::size_t>(2 * L));
    CHECK(r.diagnostics.mel.NumFrames() == 4 * L);
    CHECK(r.wave.size() == static_cast<std::size_t>(4 * L * 160));
    CHECK(r.wave.sample_rate == 16000);
    CHECK(r.diagnostics.f0_hz.size() == static_cast<std::size_t>(2 * L));
    CHECK(r.diagnostics.speaker_embedding.size() == 10);
    for (int i : r.diagnostics.indices) CHECK((i >= 0 && i < 16));
    for (float f : r.diagnostics.f0_hz) CHECK(f > 0);
    const auto j = r.diagnostics.ToJson();
    CHECK(j["indices"].size() == static_cast<std::size_t>(2 * L));
  }
}

TEST_CASE("synthesize: indices depend on lips only") {
  VtsSystem sys = TinySystem();
  const SyntheticClip &a = Clip(0, 1), &b = Clip(3, 2);
  const SynthesisResult ra = Synthesize(sys, a.lips, a.wave);
  const SynthesisResult rb = Synthesize(sys, a.lips, b.wave);
  CHECK(ra.diagnostics.indices == rb.diagnostics.indices);
  CHECK(ra.diagnostics.speaker_embedding != rb.diagnostics.speaker_embedding);
  // Deterministic end to end.
  CHECK(Synthesize(sys, a.lips, a.wave).wave.samples == ra.wave.samples);

  SynthesisConfig cfg;
  cfg.sample_indices = true;
  cfg.sample_seed = 5;
  const auto s1 = Synthesize(sys, a.lips, a.wave, cfg).diagnostics.indices;
  CHECK(Synthesize(sys, a.lips, b.wave, cfg).diagnostics.indices == s1);
  cfg.sample_seed = 6;
  CHECK(Synthesize(sys, a.lips, a.wave, cfg).diagnostics.indices != s1);
}

TEST_CASE("synthesize: errors") {
  VtsSystem sys = TinySystem();
  const SyntheticClip &c = Clip(1, 0);
  Waveform short_ref = c.wave;
  short_ref.samples.resize(7999);
  CHECK_THROWS_AS(Synthesize(sys, c.lips, short_ref), ContractError);
  short_ref.samples.resize(8000);
  CHECK_NOTHROW(Synthesize(sys, c.lips, short_ref));
  CHECK_THROWS_AS(Synthesize(sys, LipSequence{}, c.wave), ContractError);
  // Resampled references are accepted.
  const Waveform ref22 = Resample(c.wave, 22050);
  CHECK(Synthesize(sys, c.lips, ref22).wave.size() == 120 * 160);
}

TEST_CASE("load system checks the codebook checksum") {
  VtsSystem sys = TinySystem();
  const fs::path dir = TempDir("load");
  SaveCheckpoint(MakeVCCheckpoint(sys.vc, VCTrainConfig{}, 1), (dir / "vc.ckpt").string());
  Checkpoint l2i;
  l2i.kind = "lip2ind";
  l2i.config = {{"model", TinyLip2Ind()}, {"train", L2ITrainConfig{}}};
  l2i.codebook_checksum = sys.vc->codebook->Checksum();
  l2i.tensors = ModuleState(*sys.lip2ind);
  SaveCheckpoint(l2i, (dir / "good.ckpt").string());
  l2i.codebook_checksum ^= 1;
  SaveCheckpoint(l2i, (dir / "stale.ckpt").string());

  VtsSystem loaded = LoadVtsSystem((dir / "vc.ckpt").string(), (dir / "good.ckpt").string());
  const SyntheticClip &c = Clip(2, 0);
  CHECK(Synthesize(loaded, c.lips, c.wave).diagnostics.indices ==
        Synthesize(sys, c.lips, c.wave).diagnostics.indices);
  CHECK_THROWS_AS(LoadVtsSystem((dir / "vc.ckpt").string(), (dir / "stale.ckpt").string()),
                  ChecksumError);
  CHECK_THROWS_AS(CheckCompatible(sys.vc, 0), ChecksumError);
  fs::remove_all(dir);
}

TEST_CASE("convert voice") {
  VtsSystem sys = TinySystem();
  const SyntheticClip &src = Clip(0, 3), &ref = Clip(5, 3);
  const SynthesisResult r = ConvertVoice(sys.vc, src.wave, ref.wave);
  CHECK(r.diagnostics.mel.NumFrames() == 120);
  CHECK(r.diagnostics.indices.size() == 60);
  CHECK(r.wave.size() == 120 * 160);
  const Quantized q = sys.vc->Encode(ComputeMelSpectrogram(src.wave, AnalysisConfig{}));
  for (int t = 0; t < 60; ++t) CHECK(r.diagnostics.indices[t] == q.indices[t].item<int64_t>());
  // Odd frame count: the last frame is dropped.
  Waveform odd = src.wave;
  odd.samples.resize(odd.samples.size() - 160);
  CHECK(ComputeMelSpectrogram(odd, AnalysisConfig{}).NumFrames() == 119);
  CHECK(ConvertVoice(sys.vc, odd, ref.wave).diagnostics.mel.NumFrames() == 118);
  Waveform tiny = src.wave;
  tiny.samples.resize(100);
  CHECK_THROWS_AS(ConvertVoice(sys.vc, tiny, ref.wave), ContractError);
}
