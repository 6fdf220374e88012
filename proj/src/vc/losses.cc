// src/vc/losses.cc

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

#include "vcvts/vc/losses.h"

#include <cmath>
#include <numeric>
#include <random>

#include <torch/torch.h>

#include "vcvts/base/error.h"

namespace vcvts {

namespace {

void SameShape(const torch::Tensor &a, const torch::Tensor &b, const char *what) {
  if (!a.defined() || !b.defined() || a.sizes() != b.sizes())
    throw ContractError(std::string(what) + ": shape mismatch");
}

// Mean of `per_frame` [K, T] over the frames selected by `mask`.
torch::Tensor MaskedMean(const torch::Tensor &per_frame, const torch::Tensor &mask) {
  if (!mask.defined()) return per_frame.mean();
  if (mask.sizes() != per_frame.sizes()) throw ContractError("loss mask: shape mismatch");
  const auto m = mask.to(per_frame.dtype());
  return (per_frame * m).sum() / m.sum().clamp_min(1.0);
}

}  // namespace

torch::Tensor VqLoss(const torch::Tensor &z, const torch::Tensor &zhat,
                     const torch::Tensor &mask) {
  SameShape(z, zhat, "vq_loss");
  if (z.dim() != 3) throw ContractError("vq_loss: expected [K, T2, D]");
  return MaskedMean((z - zhat.detach()).pow(2).sum(-1), mask);
}

torch::Tensor SampleCpcNegatives(int batch, int length, int horizon, int num_negatives,
                                 std::uint64_t seed) {
  if (horizon < 1 || num_negatives < 1) throw ContractError("cpc: bad horizon/negatives");
  if (length <= horizon + num_negatives)
    throw ContractError("cpc: sequence of " + std::to_string(length) +
                        " unit frames is too short for horizon " + std::to_string(horizon) +
                        " with " + std::to_string(num_negatives) + " negatives");
  const int anchors = length - horizon;
  std::mt19937_64 rng(seed);
  auto out = torch::empty({batch, anchors, horizon, num_negatives}, torch::kInt64);
  auto *p = out.data_ptr<std::int64_t>();
  std::vector<int> pool(length - 1);
  for (int k = 0; k < batch; ++k) {
    for (int t = 0; t < anchors; ++t) {
      for (int m = 1; m <= horizon; ++m) {
        const int positive = t + m;
        std::iota(pool.begin(), pool.begin() + positive, 0);
        std::iota(pool.begin() + positive, pool.end(), positive + 1);
        // Partial Fisher-Yates: the first num_negatives entries.
        for (int i = 0; i < num_negatives; ++i) {
          std::uniform_int_distribution<int> pick(i, length - 2);
          std::swap(pool[i], pool[pick(rng)]);
          *p++ = pool[i];
        }
      }
    }
  }
  return out;
}

torch::Tensor CpcLoss(const torch::Tensor &zhat, const torch::Tensor &context,
                      const torch::Tensor &projections, const torch::Tensor &negatives) {
  if (zhat.dim() != 3 || context.dim() != 3 || projections.dim() != 3 || negatives.dim() != 4)
    throw ContractError("cpc_loss: bad ranks");
  const auto K = zhat.size(0), T2 = zhat.size(1), D = zhat.size(2);
  const auto M = projections.size(0), N = negatives.size(3);
  if (context.size(0) != K || context.size(1) != T2 || projections.size(1) != D ||
      projections.size(2) != context.size(2))
    throw ContractError("cpc_loss: shape mismatch");
  if (T2 <= M + N) throw ContractError("cpc_loss: sequence too short for the horizon");
  const auto A = T2 - M;
  if (negatives.size(0) != K || negatives.size(1) != A || negatives.size(2) != M)
    throw ContractError("cpc_loss: negatives shape mismatch");

  // Predictions W_m r_t: [K, A, M, D].
  const auto pred = torch::einsum("ktc,mdc->ktmd", {context.narrow(1, 0, A), projections});
  const auto steps = torch::arange(1, M + 1, torch::kInt64);
  const auto anchors = torch::arange(A, torch::kInt64);
  const auto positive = (anchors.unsqueeze(1) + steps.unsqueeze(0)).expand({K, A, M}).unsqueeze(3);
  const auto candidates = torch::cat({positive, negatives.to(torch::kInt64)}, 3);  // [K, A, M, 1+N]
  const auto offset = (torch::arange(K, torch::kInt64) * T2).view({K, 1, 1, 1});
  const auto flat = (candidates + offset).reshape({-1});
  const auto cand = zhat.reshape({K * T2, D}).index_select(0, flat).view({K, A, M, N + 1, D});
  const auto scores = (cand * pred.unsqueeze(3)).sum(-1);
  return -torch::log_softmax(scores, -1).select(-1, 0).mean();
}

torch::Tensor GaussianPairLogLikelihood(const torch::Tensor &mu, const torch::Tensor &logvar,
                                        const torch::Tensor &s) {
  SameShape(mu, logvar, "club");
  SameShape(mu, s, "club");
  const auto diff = s.unsqueeze(0) - mu.unsqueeze(1);  // [i, j, S]
  const auto lv = logvar.unsqueeze(1);
  return -0.5 * (diff.pow(2) * torch::exp(-lv) + lv + std::log(2.0 * M_PI)).sum(-1);
}

ClubResult ClubBound(const torch::Tensor &mu, const torch::Tensor &logvar,
                     const torch::Tensor &s) {
  if (mu.dim() != 2) throw ContractError("club: expected [K, S]");
  const auto K = mu.size(0);
  if (K < 2) throw ContractError("club: batch size must be at least 2");
  const auto ll = GaussianPairLogLikelihood(mu, logvar, s);
  const auto diag = ll.diagonal();
  const auto matched = diag.mean();
  const auto mismatched = (ll.sum() - diag.sum()) / static_cast<double>(K * (K - 1));
  return {matched - mismatched, matched};
}

torch::Tensor F0MseLoss(const torch::Tensor &pred, const torch::Tensor &target,
                        const torch::Tensor &mask) {
  SameShape(pred, target, "f0_mse");
  const auto sq = (pred - target).pow(2);
  return MaskedMean(sq.dim() == 1 ? sq.unsqueeze(0) : sq,
                    mask.defined() && mask.dim() == 1 ? mask.unsqueeze(0) : mask);
}

torch::Tensor ReconstructionLoss(const torch::Tensor &pred, const torch::Tensor &target,
                                 const torch::Tensor &mask) {
  SameShape(pred, target, "reconstruction");
  if (pred.dim() != 3) throw ContractError("reconstruction: expected [K, T, B]");
  const auto d = pred - target;
  const double bins = static_cast<double>(pred.size(2));
  return MaskedMean(d.abs().sum(-1) / bins, mask) + MaskedMean(d.pow(2).sum(-1) / bins, mask);
}

torch::Tensor TotalLoss(const LossComponents &c, const LossWeights &w) {
  return w.vq * c.vq + w.cpc * c.cpc + w.mi * c.mi + w.f0 * c.f0 + w.rec * c.rec;
}

}  // namespace vcvts
