// tests/unit/vc-test.cc

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
#include <limits>
#include <random>
#include <set>

#include "torch-doctest.h"

#include "grad-check.h"
#include "vcvts/base/error.h"
#include "vcvts/media/pitch.h"
#include "vcvts/vc/losses.h"
#include "vcvts/vc/vc-model.h"

using namespace vcvts;

namespace {

VCConfig TinyConfig() {
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
  c.decoder_blocks = 2;
  c.decoder_heads = 2;
  c.decoder_ffn = 32;
  c.decoder_kernel = 7;
  return c;
}

// Exhaustive nearest-row scan, lowest index on ties.
std::vector<int64_t> BruteNearest(const torch::Tensor &z, const torch::Tensor &e) {
  std::vector<int64_t> out;
  const auto za = z.accessor<float, 2>();
  const auto ea = e.accessor<float, 2>();
  for (int64_t t = 0; t < z.size(0); ++t) {
    int64_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int64_t i = 0; i < e.size(0); ++i) {
      double d = 0.0;
      for (int64_t k = 0; k < z.size(1); ++k) {
        const double diff = static_cast<double>(za[t][k]) - ea[i][k];
        d += diff * diff;
      }
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    out.push_back(best);
  }
  return out;
}

Batch RandomBatch(int K, int T, int bins, uint64_t seed) {
  torch::manual_seed(seed);
  Batch b;
  b.mel = torch::randn({K, T, bins});
  b.voiced = torch::rand({K, T}) > 0.3;
  b.f0 = torch::where(b.voiced, 100.0 + 50.0 * torch::rand({K, T}), torch::zeros({K, T}));
  b.mask = torch::ones({K, T}, torch::kBool);
  b.speaker = torch::arange(K, torch::kInt64);
  for (int k = 0; k < K; ++k) {
    b.items.push_back(k);
    b.starts.push_back(0);
  }
  return b;
}

}  // namespace

TEST_CASE("h-net halves the frame rate") {
  torch::manual_seed(0);
  HNet net(VCConfig{});
  net->eval();
  const auto mel = torch::randn({1, 120, 80});
  const auto z = net(mel);
  CHECK(z.size(1) == 60);
  CHECK(z.size(2) == 160);
  CHECK(torch::equal(z, net(mel)));
  CHECK(net(torch::randn({2, 240, 80})).size(1) == 120);
  CHECK_THROWS_AS(net(torch::randn({1, 121, 80})), ContractError);
}

TEST_CASE("quantize examples") {
  const auto e = torch::tensor({0.0f, 0.0f, 1.0f, 1.0f}).view({2, 2});
  CHECK(NearestCode(torch::tensor({0.1f, 0.2f}).view({1, 2}), e)[0].item<int64_t>() == 0);
  // Equidistant point goes to the lower index.
  CHECK(NearestCode(torch::tensor({0.5f, 0.5f}).view({1, 2}), e)[0].item<int64_t>() == 0);
  torch::manual_seed(1);
  const auto cb = torch::randn({5, 3});
  const Quantized q = Quantize(cb[3].view({1, 3}), cb);
  CHECK(q.indices[0].item<int64_t>() == 3);
  CHECK(torch::equal(q.frames[0], cb[3]));
  CHECK_THROWS_AS(Quantize(torch::empty({0, 3}), cb), ContractError);
  CHECK_THROWS_AS(Quantize(torch::randn({4, 2}), cb), ContractError);
}

TEST_CASE("quantize agrees with a brute-force scan") {
  torch::manual_seed(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto e = torch::randn({16, 8});
    const auto z = torch::randn({50, 8});
    const Quantized q = Quantize(z.view({1, 50, 8}), e);
    const auto brute = BruteNearest(z, e);
    for (int t = 0; t < 50; ++t) {
      CHECK(q.indices[0][t].item<int64_t>() == brute[t]);
      // Rows are bit-identical to the codebook.
      CHECK(torch::equal(q.frames[0][t], e[brute[t]]));
    }
  }
}

TEST_CASE("straight-through estimator has an identity Jacobian") {
  torch::manual_seed(3);
  const auto e = torch::randn({16, 8});
  const auto z = torch::randn({2, 10, 8}, torch::requires_grad());
  const auto a = torch::randn({2, 10, 8});
  const Quantized q = Quantize(z, e);
  const auto zq = StraightThrough(z, q.frames);
  CHECK(torch::equal(zq, q.frames));
  const auto gz = torch::autograd::grad({(torch::sin(zq) * a).sum()}, {z})[0];
  const auto at = q.frames.clone().requires_grad_(true);
  const auto ghat = torch::autograd::grad({(torch::sin(at) * a).sum()}, {at})[0];
  CHECK(torch::equal(gz, ghat));
  CHECK(!e.requires_grad());
}

TEST_CASE("vq loss") {
  const auto z = torch::tensor({1.0, 0.0}).view({1, 1, 2});
  CHECK(VqLoss(z, torch::zeros({1, 1, 2}, torch::kDouble)).item<double>() == 1.0);
  const auto r = torch::randn({2, 5, 3});
  CHECK(VqLoss(r, r).item<double>() == 0.0);
  CHECK_THROWS_AS(VqLoss(r, torch::randn({2, 4, 3})), ContractError);
  // Mask drops frames from the mean.
  auto zz = torch::zeros({1, 2, 1});
  zz[0][1][0] = 3.0;
  const auto m = torch::tensor({true, false}).view({1, 2});
  CHECK(VqLoss(zz, torch::zeros({1, 2, 1}), m).item<float>() == 0.0f);

  torch::manual_seed(4);
  auto x = torch::randn({1, 4, 5}, torch::kDouble);
  const auto target = torch::randn({1, 4, 5}, torch::kDouble);
  CHECK(testing::GradientRelativeError([&] { return VqLoss(x, target); }, x) <= 1e-4);
  // No gradient reaches the quantized side.
  const auto zh = target.clone().requires_grad_(true);
  const auto g = torch::autograd::grad({VqLoss(x, zh)}, {zh}, {}, false, false, true)[0];
  CHECK((!g.defined() || g.abs().sum().item<double>() == 0.0));
}

TEST_CASE("ema codebook update") {
  std::mt19937_64 rng(5);
  Codebook cb(3, 2, /*decay=*/0.0, /*eps=*/1e-5);
  const auto init = torch::randn({6, 2});
  cb->EmaUpdate(init, torch::zeros({6}, torch::kInt64), rng);  // seeds entries
  const auto before = cb->entries.clone();
  const auto z = torch::tensor({1.0f, 1.0f, 3.0f, 3.0f, 10.0f, 0.0f}).view({3, 2});
  const auto idx = torch::tensor({0, 0, 1}, torch::kInt64);
  cb->EmaUpdate(z, idx, rng);
  // Assigned codewords jump to their means up to Laplace smoothing.
  CHECK(torch::allclose(cb->entries[0], torch::tensor({2.0f, 2.0f}), 1e-4, 1e-4));
  CHECK(torch::allclose(cb->entries[1], torch::tensor({10.0f, 0.0f}), 1e-4, 1e-4));
  CHECK(torch::equal(cb->entries[2], before[2]));
  CHECK(cb->ema_counts[2].item<float>() == 0.0f);
  CHECK((cb->ema_counts >= 0).all().item<bool>());
  CHECK(cb->unused_steps[2].item<int64_t>() == 1);
  CHECK(cb->unused_steps[0].item<int64_t>() == 0);
}

TEST_CASE("ema codebook converges to four Gaussian clusters") {
  const std::vector<std::pair<float, float>> means = {{-4, -4}, {-4, 4}, {4, -4}, {4, 4}};
  std::mt19937_64 rng(6);
  std::normal_distribution<float> noise(0.0f, 0.5f);
  std::uniform_int_distribution<int> which(0, 3);
  Codebook cb(4, 2, 0.9, 1e-5);
  for (int step = 0; step < 500; ++step) {
    auto z = torch::empty({64, 2});
    for (int i = 0; i < 64; ++i) {
      const auto &m = means[which(rng)];
      z[i][0] = m.first + noise(rng);
      z[i][1] = m.second + noise(rng);
    }
    cb->EmaUpdate(z, NearestCode(z, cb->entries), rng);
  }
  std::vector<bool> taken(4, false);
  for (const auto &m : means) {
    const auto target = torch::tensor({m.first, m.second});
    const int64_t i = (cb->entries - target).norm(2, 1).argmin().item<int64_t>();
    CHECK((cb->entries[i] - target).norm().item<float>() <= 0.1f);
    CHECK(!taken[i]);
    taken[i] = true;
  }
}

TEST_CASE("dead codewords are reseeded") {
  std::mt19937_64 rng(7);
  Codebook cb(4, 2, 0.99, 1e-5, /*dead_code_steps=*/3);
  const auto z = torch::randn({8, 2});
  cb->EmaUpdate(z, torch::zeros({8}, torch::kInt64), rng);
  for (int s = 0; s < 3; ++s) cb->EmaUpdate(z, torch::zeros({8}, torch::kInt64), rng);
  const uint64_t before = cb->Checksum();
  CHECK(cb->ReseedDeadCodes(z, rng) == 3);
  CHECK(cb->Checksum() != before);
  CHECK(cb->ReseedDeadCodes(z, rng) == 0);
}

TEST_CASE("g-net is causal and settles on constant input") {
  torch::manual_seed(8);
  VCConfig cfg;
  GNet g(cfg);
  const auto x = torch::randn({1, 20, 160});
  const auto r = g(x);
  CHECK(r.size(1) == 20);
  CHECK(r.size(2) == 256);
  auto x2 = x.clone();
  x2[0][12] += 1.0;
  const auto r2 = g(x2);
  CHECK(torch::equal(r.narrow(1, 0, 12), r2.narrow(1, 0, 12)));
  CHECK(!torch::equal(r[0][12], r2[0][12]));

  const auto c = torch::randn({1, 1, 160}).expand({1, 60, 160}).contiguous();
  const auto rc = g(c).squeeze(0);
  const auto steps = (rc.narrow(0, 1, 59) - rc.narrow(0, 0, 59)).norm(2, 1);
  for (int t = 40; t < 58; ++t) CHECK(steps[t + 1].item<float>() <= steps[t].item<float>() + 1e-7f);
  CHECK(steps[58].item<float>() < 0.1f * steps[0].item<float>());
}

TEST_CASE("cpc negatives") {
  const auto neg = SampleCpcNegatives(3, 20, 4, 10, 9);
  CHECK(neg.sizes() == torch::IntArrayRef({3, 16, 4, 10}));
  CHECK(torch::equal(neg, SampleCpcNegatives(3, 20, 4, 10, 9)));
  CHECK(!torch::equal(neg, SampleCpcNegatives(3, 20, 4, 10, 10)));
  const auto a = neg.accessor<int64_t, 4>();
  for (int k = 0; k < 3; ++k)
    for (int t = 0; t < 16; ++t)
      for (int m = 0; m < 4; ++m) {
        std::set<int64_t> seen;
        for (int n = 0; n < 10; ++n) {
          const int64_t v = a[k][t][m][n];
          CHECK(v >= 0);
          CHECK(v < 20);
          CHECK(v != t + m + 1);
          seen.insert(v);
        }
        CHECK(seen.size() == 10);
      }
  CHECK_THROWS_AS(SampleCpcNegatives(1, 14, 4, 10, 0), ContractError);
}

TEST_CASE("cpc loss") {
  torch::manual_seed(10);
  const int K = 2, T2 = 20, D = 6, C = 5, M = 4, N = 10;
  const auto zhat = torch::randn({K, T2, D}, torch::kDouble);
  const auto r = torch::randn({K, T2, C}, torch::kDouble);
  const auto neg = SampleCpcNegatives(K, T2, M, N, 11);
  const double zero = CpcLoss(zhat, r, torch::zeros({M, D, C}, torch::kDouble), neg).item<double>();
  CHECK(std::abs(zero - std::log(11.0)) <= 1e-6);

  // One-hot frames with a projection that scores the true future highest.
  auto onehot = torch::zeros({1, T2, T2}, torch::kDouble);
  for (int t = 0; t < T2; ++t) onehot[0][t][t] = 1.0;
  auto w = torch::zeros({1, T2, T2}, torch::kDouble);
  for (int t = 0; t + 1 < T2; ++t) w[0][t + 1][t] = 200.0;
  const auto n1 = SampleCpcNegatives(1, T2, 1, N, 12);
  CHECK(CpcLoss(onehot, onehot, w, n1).item<double>() < 1e-12);

  auto w0 = torch::randn({M, D, C}, torch::kDouble) * 0.3;
  auto rr = r.clone();
  CHECK(testing::GradientRelativeError([&] { return CpcLoss(zhat, rr, w0, neg); }, w0) <= 1e-4);
  CHECK(testing::GradientRelativeError([&] { return CpcLoss(zhat, rr, w0, neg); }, rr) <= 1e-4);
  CHECK_THROWS_AS(CpcLoss(zhat.narrow(1, 0, 14), r.narrow(1, 0, 14), w0, neg), ContractError);
}

TEST_CASE("speaker encoder") {
  torch::manual_seed(13);
  VCConfig cfg;
  SpeakerEncoder enc(cfg);
  const auto s = enc(torch::randn({3, 50, 80}));
  CHECK(s.size(1) == 256);
  CHECK(torch::allclose(s.norm(2, 1), torch::ones({3}), 0.0, 1e-6));
  CHECK_THROWS_AS(enc(torch::randn({1, 7, 80})), ContractError);

  cfg.speaker_kernel = 1;
  SpeakerEncoder point(cfg);
  const auto mel = torch::randn({1, 40, 80});
  const auto perm = torch::randperm(40);
  const auto a = point(mel), b = point(mel.index_select(1, perm));
  CHECK(1.0 - (a * b).sum().item<double>() <= 1e-6);
  // Masked frames do not contribute.
  auto padded = torch::cat({mel, torch::randn({1, 8, 80})}, 1);
  auto mask = torch::ones({1, 48}, torch::kBool);
  mask.narrow(1, 40, 8).fill_(false);
  CHECK(1.0 - (a * point(padded, mask)).sum().item<double>() <= 1e-6);
}

TEST_CASE("club bound") {
  torch::manual_seed(14);
  const int K = 6, S = 4;
  const auto s = torch::randn({K, S}, torch::kDouble);
  const auto mu = torch::randn({1, S}, torch::kDouble).expand({K, S});
  const auto lv = torch::randn({1, S}, torch::kDouble).expand({K, S});
  CHECK(std::abs(ClubBound(mu, lv, s).bound.item<double>()) <= 1e-12);
  CHECK_THROWS_AS(ClubBound(mu.narrow(0, 0, 1), lv.narrow(0, 0, 1), s.narrow(0, 0, 1)),
                  ContractError);

  const auto m2 = torch::randn({K, S}, torch::kDouble), l2 = 0.3 * torch::randn({K, S}, torch::kDouble);
  const double base = ClubBound(m2, l2, s).bound.item<double>();
  const auto p = torch::randperm(K);
  CHECK(std::abs(ClubBound(m2.index_select(0, p), l2.index_select(0, p), s.index_select(0, p))
                     .bound.item<double>() -
                 base) <= 1e-12);
  const auto roll = torch::roll(torch::arange(K), 1);
  CHECK(std::abs(ClubBound(m2, l2, s.index_select(0, roll)).bound.item<double>() - base) > 1e-6);

  // Gradient through an estimator network with respect to z-bar.
  torch::manual_seed(15);
  MiEstimator est(5, 7, S);
  est->to(torch::kDouble);
  auto zbar = torch::randn({K, 5}, torch::kDouble);
  CHECK(testing::GradientRelativeError(
            [&] {
              const GaussianParams g = est(zbar);
              return ClubBound(g.mu, g.logvar, s).bound;
            },
            zbar) <= 1e-4);
}

TEST_CASE("club bound on a Gaussian channel matches its closed form") {
  // s = z + n, z ~ N(0, sz^2), n ~ N(0, sn^2) per dimension, with q the true
  // conditional N(z, sn^2).  The expected bound is sz^2 / sn^2 per dimension
  // while I(z; s) = 0.5 ln(1 + sz^2 / sn^2).
  torch::manual_seed(16);
  const int K = 4000, S = 2;
  const double sz = 1.0, sn = 1.0;
  const auto z = sz * torch::randn({K, S}, torch::kDouble);
  const auto s = z + sn * torch::randn({K, S}, torch::kDouble);
  const auto lv = torch::full({K, S}, std::log(sn * sn), torch::kDouble);
  const double bound = ClubBound(z, lv, s).bound.item<double>();
  const double snr = sz * sz / (sn * sn);
  const double mi = 0.5 * std::log(1.0 + snr) * S;
  CHECK(bound == doctest::Approx(snr * S).epsilon(0.05));
  CHECK(bound > mi);
}

TEST_CASE("pitch predictor and f0 loss") {
  torch::manual_seed(17);
  VCConfig cfg;
  PitchPredictor pp(cfg);
  for (int len : {10, 37, 60})
    CHECK(pp(torch::randn({1, len, 160}), torch::randn({1, 256})).size(1) == len);
  const auto c = torch::randn({2, 9});
  CHECK(F0MseLoss(c, c).item<float>() == 0.0f);
  auto pred = torch::randn({2, 9}, torch::kDouble);
  const auto target = torch::randn({2, 9}, torch::kDouble);
  CHECK(testing::GradientRelativeError([&] { return F0MseLoss(pred, target); }, pred) <= 1e-4);
}

TEST_CASE("unit f0 targets match the contour normalization") {
  std::mt19937 rng(18);
  std::uniform_real_distribution<float> hz(80.0f, 250.0f);
  std::bernoulli_distribution voiced(0.7);
  const int T = 40;
  PitchContour pc;
  pc.values.resize(T);
  pc.voiced.resize(T);
  for (int t = 0; t < T; ++t) {
    pc.voiced[t] = voiced(rng);
    pc.values[t] = pc.voiced[t] ? hz(rng) : 0.0f;
  }
  const PitchContour pooled = PoolF0ToUnitRate(pc);
  const auto expected = NormalizeLogF0(pooled, ComputeLogF0Stats(pooled));
  const auto f0 = torch::from_blob(pc.values.data(), {1, T}, torch::kFloat).clone();
  auto v = torch::zeros({1, T}, torch::kBool);
  for (int t = 0; t < T; ++t) v[0][t] = static_cast<bool>(pc.voiced[t]);
  const UnitF0Targets u = MakeUnitF0Targets(f0, v, torch::ones({1, T}, torch::kBool));
  REQUIRE(u.target.size(1) == T / 2);
  for (int t = 0; t < T / 2; ++t) {
    CHECK(u.voiced[0][t].item<bool>() == static_cast<bool>(pooled.voiced[t]));
    CHECK(u.target[0][t].item<float>() == doctest::Approx(expected[t]).epsilon(1e-4));
  }
}

TEST_CASE("decoder shapes and determinism") {
  torch::manual_seed(19);
  VCConfig cfg;
  Decoder dec(cfg);
  dec->eval();
  const auto z = torch::randn({1, 60, 160}), s = torch::randn({1, 256}), f0 = torch::randn({1, 60});
  const auto mel = dec(z, s, f0);
  CHECK(mel.size(1) == 120);
  CHECK(mel.size(2) == 80);
  CHECK(torch::equal(mel, dec(z, s, f0)));
  CHECK_THROWS_AS(dec(z, s, torch::randn({1, 59})), ContractError);
}

TEST_CASE("reconstruction loss") {
  const auto a = torch::zeros({1, 2, 2});
  auto b = torch::zeros({1, 2, 2});
  b[0][0][0] = 2.0;
  // L1 mean 0.5 plus L2 mean 1.0.
  CHECK(ReconstructionLoss(b, a).item<float>() == doctest::Approx(1.5));
  torch::manual_seed(20);
  auto pred = torch::randn({2, 6, 4}, torch::kDouble);
  const auto target = torch::randn({2, 6, 4}, torch::kDouble);
  CHECK(testing::GradientRelativeError([&] { return ReconstructionLoss(pred, target); }, pred) <=
        1e-4);
}

TEST_CASE("total loss is the weighted sum") {
  const auto z = torch::zeros({});
  CHECK(TotalLoss({z, z, z, z, z}, LossWeights{}).item<float>() == 0.0f);
  LossComponents c{torch::tensor(1.0), torch::tensor(2.0), torch::tensor(3.0), torch::tensor(4.0),
                   torch::tensor(5.0)};
  CHECK(TotalLoss(c, LossWeights{}).item<double>() == 15.0);
  LossWeights w;
  w.rec = 0.0;
  CHECK(TotalLoss(c, w).item<double>() == 10.0);
}

TEST_CASE("model forward on a micro-batch") {
  torch::manual_seed(21);
  VCModel model(TinyConfig());
  model->to(torch::kDouble);
  model->eval();
  const Batch b = RandomBatch(3, 32, 80, 22);
  Batch bd = b;
  bd.mel = b.mel.to(torch::kDouble);
  const VCStep step = model->Forward(bd, 23);
  const LossComponents &c = step.components;
  for (const auto &t : {c.vq, c.cpc, c.mi, c.f0, c.rec, step.total})
    CHECK(std::isfinite(t.item<double>()));
  for (const auto &t : {c.vq, c.cpc, c.f0, c.rec}) CHECK(t.item<double>() >= 0.0);
  CHECK(step.indices.sizes() == torch::IntArrayRef({3, 16}));
  CHECK(step.total.item<double>() ==
        doctest::Approx((c.vq + c.cpc + c.mi + c.f0 + c.rec).item<double>()));
  // Same seed, same losses.
  CHECK(model->Forward(bd, 23).total.item<double>() == step.total.item<double>());

  // Total gradient equals the sum of per-component gradients.
  const auto params = model->MainParameters();
  const VCStep e = model->Forward(bd, 24);
  const auto gt = torch::autograd::grad({e.total}, params, {}, true, false, true);
  std::vector<torch::Tensor> sum(params.size());
  for (const auto &comp : {e.components.vq, e.components.cpc, e.components.mi, e.components.f0,
                           e.components.rec}) {
    const auto g = torch::autograd::grad({comp}, params, {}, true, false, true);
    for (size_t i = 0; i < g.size(); ++i)
      if (g[i].defined()) sum[i] = sum[i].defined() ? sum[i] + g[i] : g[i];
  }
  double worst = 0.0;
  for (size_t i = 0; i < params.size(); ++i) {
    if (!gt[i].defined()) {
      CHECK(!sum[i].defined());
      continue;
    }
    worst = std::max(worst, (gt[i] - sum[i]).abs().max().item<double>());
  }
  CHECK(worst <= 1e-10);
  for (const auto &item : model->named_parameters())
    if (item.key().rfind("mi_estimator.", 0) == 0)
      for (const auto &p : params) CHECK(!p.is_same(item.value()));
}

TEST_CASE("model inference path") {
  torch::manual_seed(25);
  VCModel model(TinyConfig());
  MelSpectrogram mel;
  mel.frames = FrameMatrix::Random(120, 80);
  CHECK_THROWS_AS(model->Encode(mel), ContractError);
  model->eval();
  const Quantized q = model->Encode(mel);
  CHECK(q.indices.size(0) == 60);
  const auto s = model->SpeakerEmbed(mel);
  CHECK(s.size(0) == 10);
  const auto f0 = model->PredictF0(q.frames, s);
  CHECK(f0.size(0) == 60);
  const MelSpectrogram out = model->Decode(q.frames, s, f0);
  CHECK(out.NumFrames() == 120);
  CHECK(out.NumBins() == 80);
  CHECK(out.frames == model->Decode(q.frames, s, f0).frames);
}
