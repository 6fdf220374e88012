// tests/unit/metrics-test.cc

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
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "test-signals.h"
#include "vcvts/base/error.h"
#include "vcvts/media/griffin-lim.h"
#include "vcvts/media/mel-spectrogram.h"
#include "vcvts/metrics/distortion.h"
#include "vcvts/metrics/evaluation.h"
#include "vcvts/metrics/intelligibility.h"
#include "vcvts/metrics/projection.h"
#include "vcvts/metrics/purity.h"

using namespace vcvts;
using namespace vcvts::testing;

namespace {

Waveform AddScaled(const Waveform &x, const Waveform &noise, double gain) {
  Waveform y = x;
  for (std::size_t n = 0; n < y.samples.size(); ++n)
    y.samples[n] = static_cast<float>(y.samples[n] + gain * noise.samples[n]);
  return y;
}

Waveform AtSnr(const Waveform &x, const Waveform &noise, double snr_db) {
  const double gain = Rms(x.samples) / Rms(noise.samples) * std::pow(10.0, -snr_db / 20.0);
  return AddScaled(x, noise, gain);
}

// Two-tone modulated test signal and a chirp interferer at 10 kHz.
void PystoiSignals(Waveform &x, Waveform &chirp) {
  const int fs = 10000;
  const int n_total = 15000;
  x.sample_rate = chirp.sample_rate = fs;
  x.samples.resize(n_total);
  chirp.samples.resize(n_total);
  for (int i = 0; i < n_total; ++i) {
    const double n = i;
    const double pi = std::numbers::pi;
    x.samples[i] = static_cast<float>(
        0.5 * std::sin(2 * pi * 220 * n / fs) * (0.6 + 0.4 * std::sin(2 * pi * 3 * n / fs)) +
        0.3 * std::sin(2 * pi * 1250 * n / fs) * (0.5 + 0.5 * std::cos(2 * pi * 5 * n / fs)));
    chirp.samples[i] = static_cast<float>(std::sin(2 * pi * (0.037 * n + 1.3e-6 * n * n)));
  }
}

// Best (cost, length) over all monotone paths, by exhaustive recursion.
std::pair<double, int> BruteForceDtw(const std::vector<std::vector<double>> &c) {
  const int n = static_cast<int>(c.size()), m = static_cast<int>(c[0].size());
  std::pair<double, int> best{std::numeric_limits<double>::infinity(), 0};
  std::function<void(int, int, double, int)> walk = [&](int i, int j, double acc, int len) {
    acc += c[i][j];
    ++len;
    if (i == n - 1 && j == m - 1) {
      if (acc < best.first || (acc == best.first && len < best.second)) best = {acc, len};
      return;
    }
    if (i + 1 < n && j + 1 < m) walk(i + 1, j + 1, acc, len);
    if (i + 1 < n) walk(i + 1, j, acc, len);
    if (j + 1 < m) walk(i, j + 1, acc, len);
  };
  walk(0, 0, 0.0, 0);
  return best;
}

PitchContour Constant(float hz, int n) {
  PitchContour p;
  p.values.assign(n, hz);
  p.voiced.assign(n, hz > 0 ? 1 : 0);
  return p;
}

}  // namespace

TEST_CASE("stoi and estoi of a signal against itself") {
  const Waveform x = SpeechLike(2.0, 130.0, 3);
  CHECK(Stoi(x, x) >= 0.99);
  CHECK(Estoi(x, x) >= 0.99);
}

TEST_CASE("stoi and estoi against unrelated white noise") {
  // STOI's clipping step lets strongly modulated speech correlate with a
  // flat noise envelope, so single pairs can reach 0.3; ESTOI has no such
  // term.
  double stoi_sum = 0.0;
  int pairs = 0;
  for (unsigned seed : {1u, 2u, 3u, 4u}) {
    const Waveform x = SpeechLike(2.0, 100.0 + 25 * seed, seed);
    for (unsigned noise_seed : {11u, 12u}) {
      const Waveform noise = WhiteNoise(2.0, noise_seed * seed, 16000, 0.2);
      stoi_sum += Stoi(x, noise);
      CHECK(Estoi(x, noise) <= 0.2);
      ++pairs;
    }
  }
  CHECK(stoi_sum / pairs <= 0.35);
}

TEST_CASE("stoi and estoi agree with pystoi at 10 kHz") {
  Waveform x, chirp;
  PystoiSignals(x, chirp);
  const std::map<double, std::pair<double, double>> expected = {
      {0.1, {0.784499762137826, 0.5313570124945991}},
      {0.3, {0.7346980865521717, 0.4729888572332773}},
      {1.0, {0.6337900130037399, 0.37787385776264976}},
  };
  for (const auto &[gain, scores] : expected) {
    const Waveform y = AddScaled(x, chirp, gain);
    CHECK(Stoi(x, y) == doctest::Approx(scores.first).epsilon(1e-5));
    CHECK(Estoi(x, y) == doctest::Approx(scores.second).epsilon(1e-5));
  }
}

TEST_CASE("stoi is robust to a 2 ms shift") {
  const Waveform x = SpeechLike(2.0, 120.0, 9);
  Waveform shifted = x;
  const int shift = 32;
  std::fill(shifted.samples.begin(), shifted.samples.end(), 0.0f);
  std::copy(x.samples.begin(), x.samples.end() - shift, shifted.samples.begin() + shift);
  CHECK(std::abs(Stoi(x, shifted) - Stoi(x, x)) < 0.05);
}

TEST_CASE("estoi is invariant to global gain") {
  const Waveform x = SpeechLike(2.0, 160.0, 11);
  const Waveform y = AtSnr(x, WhiteNoise(2.0, 7, 16000, 0.1), 5.0);
  Waveform half = y;
  for (float &s : half.samples) s *= 0.5f;
  CHECK(std::abs(Estoi(x, half) - Estoi(x, y)) <= 1e-6);
}

TEST_CASE("stoi and estoi degrade monotonically with noise") {
  for (unsigned seed : {1u, 2u, 3u}) {
    const Waveform x = SpeechLike(2.0, 110.0 + 20 * seed, seed);
    const Waveform noise = WhiteNoise(2.0, 100 + seed, 16000, 0.1);
    double prev_stoi = 1.0, prev_estoi = 1.0;
    for (double snr : {20.0, 10.0, 0.0}) {
      const Waveform y = AtSnr(x, noise, snr);
      const double s = Stoi(x, y), e = Estoi(x, y);
      CHECK(s <= prev_stoi + 0.02);
      CHECK(e <= prev_estoi + 0.02);
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
      prev_stoi = s;
      prev_estoi = e;
    }
  }
}

TEST_CASE("stoi errors") {
  const Waveform x = SpeechLike(2.0);
  CHECK_THROWS_AS(Stoi(x, Resample(x, 8000)), ContractError);
  const Waveform tiny = SpeechLike(0.2);
  CHECK_THROWS_AS(Stoi(tiny, tiny), ContractError);
}

TEST_CASE("griffin_lim round trip keeps speech intelligible") {
  const AnalysisConfig cfg;
  for (unsigned seed : {1u, 2u, 3u}) {
    const Waveform x = SpeechLike(1.5, 100.0 + 30 * seed, seed);
    const Waveform y = GriffinLim(ComputeMelSpectrogram(x, cfg), cfg);
    Waveform ref = x;
    ref.samples.resize(y.samples.size());
    CHECK(Stoi(ref, y) >= 0.80);
  }
}

TEST_CASE("dtw matches exhaustive path search") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_int_distribution<int> small(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = len(rng), m = len(rng);
    std::vector<std::vector<double>> c(n, std::vector<double>(m));
    // Small integer costs make ties common.
    for (auto &row : c)
      for (double &v : row) v = small(rng);
    const DtwPath path = Dtw(n, m, [&](int i, int j) { return c[i][j]; });
    const auto oracle = BruteForceDtw(c);
    CHECK(path.cost == oracle.first);
    CHECK(static_cast<int>(path.pairs.size()) == oracle.second);
    double along = 0.0;
    for (const auto &[i, j] : path.pairs) along += c[i][j];
    CHECK(along == path.cost);
    CHECK(path.pairs.front() == std::make_pair(0, 0));
    CHECK(path.pairs.back() == std::make_pair(n - 1, m - 1));
  }
}

TEST_CASE("mcd examples") {
  const Waveform x = SpeechLike(1.0, 140.0, 2);
  CHECK(Mcd(x, x) == 0.0);

  FrameMatrix a = FrameMatrix::Zero(1, 13), b = FrameMatrix::Zero(1, 13);
  b(0, 4) = 1.0f;
  const double constant = 10.0 * std::sqrt(2.0) / std::log(10.0);
  CHECK(std::abs(McdFromCepstra(a, b) - constant) <= 1e-4);
  CHECK(std::abs(kMcdScale - constant) <= 1e-12);

  const Waveform y = AtSnr(SpeechLike(1.1, 180.0, 4), WhiteNoise(1.1, 3), 10.0);
  CHECK(std::abs(Mcd(x, y) - Mcd(y, x)) <= 1e-9);
  CHECK(Mcd(x, y) > 0.0);
  CHECK_THROWS_AS(McdFromCepstra(FrameMatrix(0, 13), b), ContractError);
}

TEST_CASE("mel cepstra are an orthonormal DCT of the log-mel frame") {
  MelSpectrogram mel;
  mel.frames = FrameMatrix::Zero(1, 80);
  std::mt19937 rng(1);
  std::normal_distribution<float> dist;
  for (int b = 0; b < 80; ++b) mel.frames(0, b) = dist(rng);
  const FrameMatrix c = MelCepstra(mel, 13);
  for (int k = 1; k <= 13; ++k) {
    double acc = 0.0;
    for (int b = 0; b < 80; ++b)
      acc += mel.frames(0, b) * std::cos(std::numbers::pi * k * (2 * b + 1) / 160.0);
    CHECK(c(0, k - 1) == doctest::Approx(acc * std::sqrt(2.0 / 80.0)).epsilon(1e-4));
  }
}

TEST_CASE("f0_rmse examples") {
  const PitchContour a = Constant(100.0f, 50);
  CHECK(F0Rmse(a, a).rmse_hz == 0.0);
  const F0RmseResult off = F0Rmse(a, Constant(110.0f, 50));
  CHECK(off.rmse_hz == 10.0);
  CHECK(off.co_voiced == 50);
  CHECK_THROWS_AS(F0Rmse(a, Constant(0.0f, 50)), ContractError);
  PitchContour slow = a;
  slow.frame_rate = 50.0;
  CHECK_THROWS_AS(F0Rmse(a, slow), ContractError);
}

TEST_CASE("f0_rmse is symmetric") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<float> hz(90.0f, 250.0f);
  std::bernoulli_distribution voiced(0.7);
  for (int trial = 0; trial < 50; ++trial) {
    PitchContour a, b;
    for (int t = 0; t < 40 + trial % 7; ++t) {
      const bool v = voiced(rng);
      a.voiced.push_back(v);
      a.values.push_back(v ? hz(rng) : 0.0f);
    }
    for (int t = 0; t < 43; ++t) {
      const bool v = voiced(rng);
      b.voiced.push_back(v);
      b.values.push_back(v ? hz(rng) : 0.0f);
    }
    CHECK(std::abs(F0Rmse(a, b).rmse_hz - F0Rmse(b, a).rmse_hz) <= 1e-9);
  }
}

TEST_CASE("unit purity examples") {
  std::vector<std::vector<int>> idx;
  std::vector<std::vector<PhonemeSegment>> align;
  for (int k = 0; k < 5; ++k) {
    std::vector<PhonemeSegment> segs;
    std::vector<int> units;
    for (int p = 0; p < 6; ++p) {
      const int label = (p + k) % 12;
      segs.push_back({label, 16 * p, 16 * (p + 1)});
      for (int t = 0; t < 8; ++t) units.push_back(3 * label + 1);
    }
    idx.push_back(units);
    align.push_back(segs);
  }
  const PurityReport r = UnitPurityReport(idx, align, 200);
  CHECK(r.purity == 1.0);
  CHECK(r.num_frames == 240);
  CHECK(r.ToJson()["purity"].get<double>() == 1.0);
  CHECK(IndexOverlaySvg(idx[0], align[0], 200).find("<svg") == 0);
  CHECK_THROWS_AS(UnitPurityReport(idx, {align[0]}, 200), ContractError);
  align[2].clear();
  CHECK_THROWS_AS(UnitPurityReport(idx, align, 200), ContractError);
}

TEST_CASE("unit purity of random indices matches a Monte-Carlo baseline") {
  const int phonemes = 12, per_phoneme = 400, codes = 200;
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> any(0, codes - 1);
  std::vector<std::vector<int>> idx(1);
  std::vector<std::vector<PhonemeSegment>> align(1);
  for (int p = 0; p < phonemes; ++p) {
    align[0].push_back({p, 2 * p * per_phoneme, 2 * (p + 1) * per_phoneme});
    for (int t = 0; t < per_phoneme; ++t) idx[0].push_back(any(rng));
  }
  const double purity = UnitPurityReport(idx, align, codes).purity;

  // Expected largest bin share of `per_phoneme` uniform draws.
  std::mt19937_64 mc(99);
  double expected = 0.0;
  const int trials = 2000;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<int> counts(codes, 0);
    for (int t = 0; t < per_phoneme; ++t) ++counts[mc() % codes];
    expected += *std::max_element(counts.begin(), counts.end());
  }
  expected /= trials * static_cast<double>(per_phoneme);
  CHECK(purity > 1.0 / codes);
  CHECK(std::abs(purity - expected) < 0.006);
}

TEST_CASE("unit purity is invariant to index relabeling") {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> any(0, 199);
  std::vector<std::vector<int>> idx(4);
  std::vector<std::vector<PhonemeSegment>> align(4);
  for (int k = 0; k < 4; ++k) {
    for (int p = 0; p < 10; ++p) align[k].push_back({(p * 7 + k) % 12, 8 * p, 8 * p + 8});
    for (int t = 0; t < 40; ++t) idx[k].push_back(any(rng) % (t % 5 + 3));
  }
  std::vector<int> perm(200);
  std::iota(perm.begin(), perm.end(), 0);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    auto relabeled = idx;
    for (auto &seq : relabeled)
      for (int &i : seq) i = perm[i];
    const PurityReport a = UnitPurityReport(idx, align, 200);
    const PurityReport b = UnitPurityReport(relabeled, align, 200);
    CHECK(a.purity == b.purity);
    CHECK(a.codes_used == b.codes_used);
    CHECK(std::abs(a.usage_entropy_bits - b.usage_entropy_bits) < 1e-12);
  }
}

TEST_CASE("unit frame labels sample the first mel frame of each unit") {
  const std::vector<PhonemeSegment> segs = {{3, 0, 4}, {5, 4, 9}, {1, 9, 12}};
  const std::vector<int> labels = UnitFrameLabels(segs, 7);
  CHECK(labels == std::vector<int>{3, 3, 5, 5, 5, 1, -1});
}

TEST_CASE("silhouette matches hand computation") {
  Eigen::MatrixXd x(4, 1);
  x << 0, 1, 4, 5;
  const std::vector<int> labels = {0, 0, 1, 1};
  // a = 1 for every point; b = 4.5, 3.5, 3.5, 4.5.
  const double expected = (3.5 / 4.5 + 2.5 / 3.5 + 2.5 / 3.5 + 3.5 / 4.5) / 4.0;
  CHECK(Silhouette(x, labels) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("speaker projection of separated blobs") {
  std::mt19937 rng(4);
  std::normal_distribution<double> dist;
  Eigen::MatrixXd x(40, 256);
  std::vector<int> labels(40);
  for (int i = 0; i < 40; ++i) {
    labels[i] = i % 2;
    for (int d = 0; d < 256; ++d) x(i, d) = dist(rng) * 0.3 + (labels[i] ? 3.0 : -3.0) * (d < 8);
  }
  const SpeakerProjection p = ProjectSpeakers(x, labels);
  CHECK(p.silhouette > 0.5);
  CHECK(p.coords.rows() == 40);
  CHECK(p.coords.allFinite());
  // Blobs stay apart in the plane: every point is nearer its own centroid.
  Eigen::RowVector2d c0 = Eigen::RowVector2d::Zero(), c1 = Eigen::RowVector2d::Zero();
  for (int i = 0; i < 40; ++i) (labels[i] ? c1 : c0) += p.coords.row(i) / 20.0;
  for (int i = 0; i < 40; ++i) {
    const double d0 = (p.coords.row(i) - c0).norm(), d1 = (p.coords.row(i) - c1).norm();
    CHECK((labels[i] ? d1 < d0 : d0 < d1));
  }
  const SpeakerProjection again = ProjectSpeakers(x, labels);
  CHECK(again.coords == p.coords);
  CHECK(ProjectionSvg(p, labels).find("<svg") == 0);
}

TEST_CASE("speaker projection of degenerate and tiny inputs") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(6, 16);
  x.bottomRows(3).setOnes();
  const std::vector<int> labels = {0, 0, 0, 1, 1, 1};
  const SpeakerProjection p = ProjectSpeakers(x, labels);
  CHECK(p.coords.allFinite());
  CHECK(p.silhouette == doctest::Approx(1.0));
  CHECK_THROWS_AS(ProjectSpeakers(x.topRows(4), {0, 0, 0, 1}), ContractError);
}

TEST_CASE("evaluate_system on the identity system") {
  const auto dir = std::filesystem::temp_directory_path() / "vcvts-eval-test";
  std::filesystem::create_directories(dir);
  std::map<std::string, Waveform> clips = {
      {"a", SpeechLike(1.2, 120.0, 1)},
      {"b", SpeechLike(1.2, 180.0, 2)},
      {"c", SpeechLike(1.2, 220.0, 3)},
  };
  std::vector<std::string> ids;
  for (const auto &[id, w] : clips) ids.push_back(id);
  auto lookup = [&](const std::string &id) { return clips.at(id); };

  const std::string pesq = (dir / "fake-pesq.sh").string();
  {
    std::ofstream os(pesq);
    os << "#!/bin/sh\necho 4.25\n";
  }
  std::filesystem::permissions(pesq, std::filesystem::perms::owner_all);
  EvalOptions opts;
  opts.pesq_executable = pesq;
  opts.scratch_dir = dir.string();

  const EvalReport report = EvaluateSystem(ids, lookup, lookup, opts);
  REQUIRE(report.rows.size() == ids.size());
  for (const ClipScores &r : report.rows) {
    CHECK(r.stoi >= 0.99);
    CHECK(r.mcd == 0.0);
    CHECK(r.f0_rmse == 0.0);
    CHECK(r.co_voiced > 0);
    CHECK(r.pesq.value() == 4.25);
  }
  const std::string prefix = (dir / "report").string();
  WriteEvalReport(report, prefix);
  const auto json = nlohmann::json::parse(std::ifstream(prefix + ".json"));
  CHECK(json["clips"].size() == 3);
  std::ifstream csv(prefix + ".csv");
  std::string line;
  int lines = 0;
  std::getline(csv, line);
  CHECK(line == "sample_id,pesq,stoi,estoi,mcd,f0_rmse,co_voiced");
  while (std::getline(csv, line)) ++lines;
  CHECK(lines == 3);

  opts.pesq_executable.reset();
  const EvalReport plain = EvaluateSystem(ids, lookup, lookup, opts);
  CHECK(plain.ToCsv().rfind("sample_id,stoi", 0) == 0);
  std::filesystem::remove_all(dir);
}
