// tests/unit/corpus-test.cc

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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <set>

#include "torch-doctest.h"

#include "test-signals.h"
#include "vcvts/base/error.h"
#include "vcvts/corpus/av-sample.h"
#include "vcvts/corpus/batch-iterator.h"
#include "vcvts/corpus/manifest.h"
#include "vcvts/corpus/synthetic-corpus.h"

using namespace vcvts;
namespace fs = std::filesystem;

namespace {

fs::path TempDir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("vcvts-corpus-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// The default 8 x 25 x 1.2 s corpus, generated once.
const Manifest &DefaultCorpus() {
  static const Manifest m = [] {
    const fs::path dir = TempDir("default");
    return GenerateSyntheticCorpus(SynthConfig{}, dir.string());
  }();
  return m;
}

std::string Slurp(const fs::path &p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), {}};
}

// Mouth opening decoded from pixels: the bounding box of the dark interior.
LipShape MeasureMouth(const LipSequence &lips, int l) {
  int top = lips.height, bottom = -1, left = lips.width, right = -1;
  for (int y = 0; y < lips.height; ++y) {
    for (int x = 0; x < lips.width; ++x) {
      if (lips.at(l, y, x) >= 0.18f) continue;
      top = std::min(top, y);
      bottom = std::max(bottom, y);
      left = std::min(left, x);
      right = std::max(right, x);
    }
  }
  const double half_h = (bottom - top + 1) / 2.0, half_w = (right - left + 1) / 2.0;
  return {(half_h - kMouthHalfHeightBase) / kMouthHalfHeightScale,
          (half_w - kMouthHalfWidthBase) / kMouthHalfWidthScale};
}

}  // namespace

TEST_CASE("synthetic corpus counts and split") {
  const Manifest &m = DefaultCorpus();
  CHECK(m.entries.size() == 200);
  CHECK(m.Entries(Split::kTrain).size() == 160);
  CHECK(m.Entries(Split::kDev).size() == 20);
  CHECK(m.Entries(Split::kTest).size() == 20);
  CHECK(m.Speakers().size() == 8);
  std::map<std::string, int> train_per_speaker;
  for (const ManifestEntry *e : m.Entries(Split::kTrain)) ++train_per_speaker[e->speaker_id];
  for (const auto &[spk, n] : train_per_speaker) CHECK(n == 20);
  const Manifest loaded = LoadManifest(m.Resolve("manifest.jsonl"));
  CHECK(loaded.entries.size() == 200);
}

TEST_CASE("synthetic corpus is byte-reproducible") {
  SynthConfig cfg;
  cfg.num_speakers = 2;
  cfg.clips_per_speaker = 4;
  const fs::path a = TempDir("repro-a"), b = TempDir("repro-b");
  GenerateSyntheticCorpus(cfg, a.string());
  GenerateSyntheticCorpus(cfg, b.string());
  int files = 0;
  for (const auto &entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), a);
    CHECK(Slurp(entry.path()) == Slurp(b / rel));
    ++files;
  }
  CHECK(files == 2 * 4 * 2 + 2);
  cfg.seed = 8;
  const fs::path c = TempDir("repro-c");
  GenerateSyntheticCorpus(cfg, c.string());
  CHECK(Slurp(a / "wav/spk00_clip000.wav") != Slurp(c / "wav/spk00_clip000.wav"));
  fs::remove_all(a);
  fs::remove_all(b);
  fs::remove_all(c);
}

TEST_CASE("lip frames decode to the generating phonemes") {
  const Manifest &m = DefaultCorpus();
  const int P = SynthConfig{}.num_phonemes;
  long correct = 0, total = 0;
  for (const ManifestEntry &e : m.entries) {
    const LipSequence lips = ReadLips(m.Resolve(e.lip_path));
    for (int l = 0; l < lips.num_frames; ++l) {
      const LipShape seen = MeasureMouth(lips, l);
      int best = 0;
      double best_d = 1e9;
      for (int p = 0; p < P; ++p) {
        const LipShape t = Phoneme(p, P).lips;
        const double d = std::hypot(seen.aperture - t.aperture, seen.width - t.width);
        if (d < best_d) {
          best_d = d;
          best = p;
        }
      }
      int truth = -1;
      for (const PhonemeSegment &s : *e.alignment)
        if (4 * l >= s.start && 4 * l < s.end) truth = s.label;
      correct += best == truth;
      ++total;
    }
  }
  CHECK(total == 200 * 30);
  CHECK(static_cast<double>(correct) / total >= 0.99);
}

TEST_CASE("phoneme boundaries fall on lip frames and cover the clip") {
  for (const ManifestEntry &e : DefaultCorpus().entries) {
    int pos = 0;
    for (const PhonemeSegment &s : *e.alignment) {
      CHECK(s.start == pos);
      CHECK(s.start % 4 == 0);
      CHECK(s.end % 4 == 0);
      pos = s.end;
    }
    CHECK(pos == 120);
  }
}

TEST_CASE("load_sample: rate arithmetic and speaker F0") {
  const Manifest &m = DefaultCorpus();
  const CorpusTruth truth = LoadCorpusTruth(m.Resolve("truth.json"));
  CHECK_THROWS_AS(LoadSample(m, "nope"), ContractError);
  for (const ManifestEntry &e : m.entries) {
    const AVSample s = LoadSample(m, e.sample_id);
    CHECK(s.mel.NumFrames() == 120);
    CHECK(s.mel.NumBins() == 80);
    CHECK(s.lips.num_frames == 30);
    CHECK(s.f0.size() == 120);
    CHECK(s.mel.NumFrames() == 4 * s.lips.num_frames);
    std::vector<double> voiced;
    for (int t = 0; t < s.f0.size(); ++t)
      if (s.f0.voiced[t]) voiced.push_back(s.f0.values[t]);
    REQUIRE(!voiced.empty());
    const double base = truth.SpeakerById(e.speaker_id).base_f0_hz;
    CHECK(std::abs(testing::Median(voiced) - base) <= 0.05 * base);
  }
}

TEST_CASE("load_manifest examples") {
  const fs::path dir = TempDir("manifest");
  {
    std::ofstream(dir / "empty.jsonl");
  }
  CHECK(LoadManifest((dir / "empty.jsonl").string()).entries.empty());

  std::ofstream(dir / "a.wav") << "x";
  std::ofstream(dir / "a.lips") << "x";
  {
    std::ofstream os(dir / "bad.jsonl");
    os << R"({"sample_id":"a","wav_path":"a.wav","lip_path":"a.lips","speaker_id":"s","split":"train"})"
       << "\n\n"
       << R"({"sample_id":"b","lip_path":"a.lips","speaker_id":"s","split":"dev"})" << "\n";
  }
  try {
    LoadManifest((dir / "bad.jsonl").string());
    FAIL("expected a parse error");
  } catch (const FormatError &e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    CHECK(std::string(e.what()).find("wav_path") != std::string::npos);
  }
  {
    std::ofstream os(dir / "dup.jsonl");
    for (int i = 0; i < 2; ++i)
      os << R"({"sample_id":"a","wav_path":"a.wav","lip_path":"a.lips","speaker_id":"s","split":"train"})"
         << "\n";
  }
  CHECK_THROWS_AS(LoadManifest((dir / "dup.jsonl").string()), FormatError);
  {
    std::ofstream os(dir / "dangling.jsonl");
    os << R"({"sample_id":"a","wav_path":"zz.wav","lip_path":"a.lips","speaker_id":"s","split":"train"})"
       << "\n";
  }
  CHECK_THROWS_AS(LoadManifest((dir / "dangling.jsonl").string()), IoError);
  CHECK_THROWS_AS(LoadManifest((dir / "missing.jsonl").string()), IoError);

  Manifest m;
  m.base_dir = dir.string();
  for (int i = 0; i < 5; ++i)
    m.entries.push_back({"id" + std::to_string(i), "a.wav", "a.lips", "s",
                         i % 2 ? Split::kDev : Split::kTrain,
                         std::vector<PhonemeSegment>{{i, 0, 8}}});
  WriteManifest(m, (dir / "rt.jsonl").string());
  const Manifest back = LoadManifest((dir / "rt.jsonl").string());
  REQUIRE(back.entries.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(back.entries[i].sample_id == m.entries[i].sample_id);
    CHECK(back.entries[i].split == m.entries[i].split);
    CHECK(back.entries[i].alignment->at(0).label == i);
  }
  fs::remove_all(dir);
}

TEST_CASE("batch iterator: counts, determinism and co-cropping") {
  const Manifest &m = DefaultCorpus();
  const std::vector<AVSample> train = LoadSplit(m, Split::kTrain);
  BatchOptions opts;
  opts.batch_size = 32;
  opts.crop_frames = 96;
  opts.seed = 3;
  opts.with_lips = true;
  const BatchIterator it(train, opts);
  CHECK(it.NumBatches() == 5);
  const auto e0 = it.Epoch(0), again = it.Epoch(0), e1 = it.Epoch(1);
  REQUIRE(e0.size() == 5);
  std::set<int> seen;
  bool differs = false;
  for (std::size_t b = 0; b < e0.size(); ++b) {
    CHECK(e0[b].items == again[b].items);
    CHECK(e0[b].starts == again[b].starts);
    CHECK(torch::equal(e0[b].mel, again[b].mel));
    differs |= e0[b].items != e1[b].items;
    for (int i = 0; i < e0[b].size(); ++i) {
      seen.insert(e0[b].items[i]);
      const AVSample &s = train[e0[b].items[i]];
      const int start = e0[b].starts[i];
      CHECK(start % 4 == 0);
      CHECK(start + 96 <= s.mel.NumFrames());
      CHECK(e0[b].mel[i][0][5].item<float>() == s.mel.frames(start, 5));
      CHECK(e0[b].f0[i][7].item<float>() == s.f0.values[start + 7]);
      // Lip crop start is the mel crop start over four.
      for (int j : {0, 23}) {
        const int y = 40, x = 50;
        CHECK(e0[b].lips[i][j][y][x].item<float>() == s.lips.at(start / 4 + j, y, x));
      }
      CHECK(e0[b].mask[i].all().item<bool>());
    }
  }
  CHECK(seen.size() == 160);
  CHECK(differs);
}

TEST_CASE("batch iterator pads short clips and masks the padding") {
  const Manifest &m = DefaultCorpus();
  std::vector<AVSample> data = {LoadSample(m, m.entries[0].sample_id)};
  BatchOptions opts;
  opts.batch_size = 4;
  opts.crop_frames = 160;
  opts.with_lips = true;
  const Batch b = BatchIterator(data, opts).Epoch(0)[0];
  CHECK(b.starts[0] == 0);
  CHECK(b.mask[0].sum().item<int64_t>() == 120);
  CHECK(b.mel[0][125][3].item<float>() == data[0].mel.frames(5, 3));
  CHECK(b.lips.size(1) == 40);
  CHECK(torch::equal(b.lips[0][31], b.lips[0][1]));
  opts.crop_frames = 30;
  CHECK_THROWS_AS(BatchIterator(data, opts), ContractError);
  const std::vector<AVSample> none;
  CHECK_THROWS_AS(BatchIterator(none, BatchOptions{}), ContractError);
}
