// include/vcvts/vc/losses.h

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

#ifndef VCVTS_VC_LOSSES_H_
#define VCVTS_VC_LOSSES_H_

#include <cstdint>

#include <torch/types.h>

#include "vcvts/vc/vc-config.h"

namespace vcvts {

/// Mean over unit frames of ||z - sg(zhat)||^2.  z, zhat: [K, T2, D];
/// `mask` [K, T2] bool selects the frames that count (all when undefined).
torch::Tensor VqLoss(const torch::Tensor &z, const torch::Tensor &zhat,
                     const torch::Tensor &mask = {});

/// Negative time indices [K, T2 - M, M, num_negatives]: for every anchor t
/// and step m, distinct frames of the same utterance other than t + m, drawn
/// uniformly without replacement.
torch::Tensor SampleCpcNegatives(int batch, int length, int horizon, int num_negatives,
                                 std::uint64_t seed);

/// InfoNCE over the M future steps.  zhat [K, T2, D], context [K, T2, C],
/// projections [M, D, C], negatives as from SampleCpcNegatives.
torch::Tensor CpcLoss(const torch::Tensor &zhat, const torch::Tensor &context,
                      const torch::Tensor &projections, const torch::Tensor &negatives);

/// log q(s_j | z_i) for every pair, [K, K]; q is a diagonal Gaussian with
/// mean mu_i and log-variance logvar_i.
torch::Tensor GaussianPairLogLikelihood(const torch::Tensor &mu, const torch::Tensor &logvar,
                                        const torch::Tensor &s);

struct ClubResult {
  torch::Tensor bound;       // matched mean minus mismatched mean
  torch::Tensor matched_ll;  // mean log q(s_k | z_k)
};

/// Contrastive log-ratio upper bound on I(z; s).  mu, logvar, s: [K, S], K >= 2.
ClubResult ClubBound(const torch::Tensor &mu, const torch::Tensor &logvar,
                     const torch::Tensor &s);

/// Mean squared error over unit frames selected by `mask` (all when undefined).
torch::Tensor F0MseLoss(const torch::Tensor &pred, const torch::Tensor &target,
                        const torch::Tensor &mask = {});

/// Mean absolute plus mean squared error over mel frames; pred, target
/// [K, T, B], mask [K, T].
torch::Tensor ReconstructionLoss(const torch::Tensor &pred, const torch::Tensor &target,
                                 const torch::Tensor &mask = {});

struct LossComponents {
  torch::Tensor vq, cpc, mi, f0, rec;
};

torch::Tensor TotalLoss(const LossComponents &c, const LossWeights &w);

}  // namespace vcvts

#endif  // VCVTS_VC_LOSSES_H_
