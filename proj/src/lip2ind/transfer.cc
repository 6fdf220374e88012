// src/lip2ind/transfer.cc

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

#include "vcvts/lip2ind/transfer.h"

#include <torch/torch.h>

#include "vcvts/base/error.h"

namespace vcvts {

torch::Tensor TransferLoss(const torch::Tensor &log_q, const torch::Tensor &targets) {
  if (log_q.dim() != 3) throw ContractError("transfer loss: expected [K, T2, N] posteriors");
  const auto N = log_q.size(2);
  if (targets.dim() == 3) {
    if (targets.sizes() != log_q.sizes()) throw ContractError("transfer loss: length mismatch");
    const auto t = targets.to(log_q.dtype());
    // Zero-weight classes contribute nothing even where log q is -inf.
    return -torch::where(t > 0, t * log_q, torch::zeros_like(log_q)).sum(-1).mean();
  }
  if (targets.dim() != 2 || targets.size(0) != log_q.size(0) || targets.size(1) != log_q.size(1))
    throw ContractError("transfer loss: length mismatch");
  const auto idx = targets.to(torch::kInt64);
  if (idx.numel() > 0 && (idx.min().item<int64_t>() < 0 || idx.max().item<int64_t>() >= N))
    throw ContractError("transfer loss: target index outside [0, " + std::to_string(N) + ")");
  return -log_q.gather(2, idx.unsqueeze(-1)).mean();
}

torch::Tensor TransferLossFromLogits(const torch::Tensor &logits, const torch::Tensor &targets) {
  return TransferLoss(torch::log_softmax(logits, -1), targets);
}

torch::Tensor PredictIndices(const torch::Tensor &q) {
  if (q.numel() == 0) throw ContractError("predict_indices: empty posteriors");
  return q.argmax(-1);
}

torch::Tensor OneHotTargets(const torch::Tensor &indices, int num_codes) {
  return torch::one_hot(indices.to(torch::kInt64), num_codes).to(torch::kFloat);
}

}  // namespace vcvts
