// include/vcvts/vc/quantizer.h

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

#ifndef VCVTS_VC_QUANTIZER_H_
#define VCVTS_VC_QUANTIZER_H_

#include <cstdint>
#include <random>

#include <torch/nn/module.h>
#include <torch/types.h>

namespace vcvts {

/// Index of the nearest row of `entries` [N, D] for every row of `z` [..., D]
/// under Euclidean distance, ties to the lowest index.  Distances are
/// evaluated in double precision.  Returns int64 of shape z.shape[:-1].
torch::Tensor NearestCode(const torch::Tensor &z, const torch::Tensor &entries);

/// Rows of `entries` selected by `indices`, bit-identical to the codebook.
torch::Tensor LookupCodes(const torch::Tensor &indices, const torch::Tensor &entries);

struct Quantized {
  torch::Tensor frames;   // [..., D], codebook rows, no gradient
  torch::Tensor indices;  // [...], int64
};

Quantized Quantize(const torch::Tensor &z, const torch::Tensor &entries);

/// Returns `zhat` unchanged in the forward pass; the backward pass hands the
/// incoming gradient to `z` untouched (identity Jacobian).
torch::Tensor StraightThrough(const torch::Tensor &z, const torch::Tensor &zhat);

/// Codebook trained by exponential moving averages of assigned encoder
/// outputs.  Entries never receive loss gradients.
class CodebookImpl : public torch::nn::Module {
 public:
  CodebookImpl(int num_codes, int dim, double decay = 0.999, double eps = 1e-5,
               int dead_code_steps = 200);

  /// One EMA step from flattened encoder outputs `z` [M, D] and their
  /// indices [M].  The first call seeds the entries from rows of `z` by
  /// k-means++ sampling.  Running counts and sums start at zero, so an entry
  /// is the decayed mean of the frames assigned to it once it has any.
  void EmaUpdate(const torch::Tensor &z, const torch::Tensor &indices,
                 std::mt19937_64 &rng);

  /// Reseeds entries unused for dead_code_steps consecutive updates with
  /// random rows of `z`; returns how many were reseeded.
  int ReseedDeadCodes(const torch::Tensor &z, std::mt19937_64 &rng);

  /// FNV-1a over the little-endian float32 entries.
  std::uint64_t Checksum() const;

  int NumCodes() const { return static_cast<int>(entries.size(0)); }
  int Dim() const { return static_cast<int>(entries.size(1)); }

  torch::Tensor entries;      // [N, D]
  torch::Tensor ema_counts;   // [N]
  torch::Tensor ema_sums;     // [N, D]
  torch::Tensor unused_steps; // [N] int64
  torch::Tensor initialized;  // scalar bool

  double decay;
  double eps;
  int dead_code_steps;
};
TORCH_MODULE(Codebook);

}  // namespace vcvts

#endif  // VCVTS_VC_QUANTIZER_H_
