// include/vcvts/lip2ind/transfer.h

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

#ifndef VCVTS_LIP2IND_TRANSFER_H_
#define VCVTS_LIP2IND_TRANSFER_H_

#include <torch/types.h>

namespace vcvts {

/// Mean negative log posterior of the target index over all unit frames.
/// log_q [K, T2, N] log-posteriors; targets either int64 [K, T2] indices in
/// [0, N) or soft [K, T2, N] rows (expected cross-entropy).
torch::Tensor TransferLoss(const torch::Tensor &log_q, const torch::Tensor &targets);

/// TransferLoss on log_softmax(logits).
torch::Tensor TransferLossFromLogits(const torch::Tensor &logits, const torch::Tensor &targets);

/// Per-frame argmax of [..., N] posteriors, lowest index on ties.
torch::Tensor PredictIndices(const torch::Tensor &q);

/// One-hot soft targets [.., N] from indices.
torch::Tensor OneHotTargets(const torch::Tensor &indices, int num_codes);

}  // namespace vcvts

#endif  // VCVTS_LIP2IND_TRANSFER_H_
