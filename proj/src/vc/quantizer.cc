// src/vc/quantizer.cc

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

#include "vcvts/vc/quantizer.h"

#include <torch/torch.h>

#include "vcvts/base/checksum.h"
#include "vcvts/base/error.h"

namespace vcvts {

namespace {

struct StraightThroughFn : torch::autograd::Function<StraightThroughFn> {
  static torch::Tensor forward(torch::autograd::AutogradContext *, torch::Tensor z,
                               torch::Tensor zhat) {
    return zhat.detach().clone();
  }

  static torch::autograd::variable_list backward(torch::autograd::AutogradContext *,
                                                 torch::autograd::variable_list grad) {
    return {grad[0], torch::Tensor()};
  }
};

torch::Tensor RandomRows(const torch::Tensor &z, int count, std::mt19937_64 &rng) {
  std::uniform_int_distribution<std::int64_t> pick(0, z.size(0) - 1);
  std::vector<std::int64_t> rows(count);
  for (auto &r : rows) r = pick(rng);
  return z.index_select(0, torch::tensor(rows, torch::kInt64));
}

// k-means++ seeding: each further row is drawn with probability proportional
// to its squared distance from the rows already chosen.
torch::Tensor SpreadRows(const torch::Tensor &z, int count, std::mt19937_64 &rng) {
  const auto zd = z.to(torch::kDouble).contiguous();
  const std::int64_t m = zd.size(0);
  std::uniform_int_distribution<std::int64_t> uniform(0, m - 1);
  std::vector<std::int64_t> rows = {uniform(rng)};
  auto d2 = (zd - zd[rows[0]]).pow(2).sum(1).contiguous();
  while (static_cast<int>(rows.size()) < count) {
    const double *w = d2.data_ptr<double>();
    std::int64_t next;
    if (d2.sum().item<double>() > 0.0) {
      std::discrete_distribution<std::int64_t> pick(w, w + m);
      next = pick(rng);
    } else {
      next = uniform(rng);
    }
    rows.push_back(next);
    d2 = torch::minimum(d2, (zd - zd[next]).pow(2).sum(1)).contiguous();
  }
  return z.index_select(0, torch::tensor(rows, torch::kInt64));
}

}  // namespace

torch::Tensor NearestCode(const torch::Tensor &z, const torch::Tensor &entries) {
  if (z.numel() == 0) throw ContractError("quantize: empty input");
  if (entries.dim() != 2 || z.size(-1) != entries.size(1))
    throw ContractError("quantize: dimension mismatch");
  torch::NoGradGuard guard;
  const auto zd = z.reshape({-1, z.size(-1)}).to(torch::kDouble);
  const auto ed = entries.to(torch::kDouble);
  const auto dist = zd.pow(2).sum(1, true) - 2.0 * zd.matmul(ed.t()) +
                    ed.pow(2).sum(1).unsqueeze(0);
  auto shape = z.sizes().vec();
  shape.pop_back();
  return dist.argmin(1).reshape(shape);
}

torch::Tensor LookupCodes(const torch::Tensor &indices, const torch::Tensor &entries) {
  if (indices.numel() > 0 &&
      (indices.min().item<std::int64_t>() < 0 ||
       indices.max().item<std::int64_t>() >= entries.size(0)))
    throw ContractError("unit index out of range [0, " + std::to_string(entries.size(0)) + ")");
  auto shape = indices.sizes().vec();
  shape.push_back(entries.size(1));
  return entries.detach().index_select(0, indices.reshape({-1}).to(torch::kInt64)).reshape(shape);
}

Quantized Quantize(const torch::Tensor &z, const torch::Tensor &entries) {
  Quantized q;
  q.indices = NearestCode(z, entries);
  q.frames = LookupCodes(q.indices, entries);
  return q;
}

torch::Tensor StraightThrough(const torch::Tensor &z, const torch::Tensor &zhat) {
  return StraightThroughFn::apply(z, zhat);
}

CodebookImpl::CodebookImpl(int num_codes, int dim, double decay_, double eps_,
                           int dead_code_steps_)
    : decay(decay_), eps(eps_), dead_code_steps(dead_code_steps_) {
  entries = register_buffer("entries", torch::randn({num_codes, dim}) * 0.1);
  ema_counts = register_buffer("ema_counts", torch::ones({num_codes}));
  ema_sums = register_buffer("ema_sums", entries.clone());
  unused_steps = register_buffer("unused_steps", torch::zeros({num_codes}, torch::kInt64));
  initialized = register_buffer("initialized", torch::zeros({}, torch::kBool));
}

void CodebookImpl::EmaUpdate(const torch::Tensor &z_in, const torch::Tensor &indices,
                             std::mt19937_64 &rng) {
  torch::NoGradGuard guard;
  const auto z = z_in.detach().reshape({-1, Dim()}).to(entries.dtype());
  const auto idx = indices.reshape({-1}).to(torch::kInt64);
  if (z.size(0) != idx.size(0)) throw ContractError("EMA update: size mismatch");
  if (!initialized.item<bool>()) {
    entries.copy_(SpreadRows(z, NumCodes(), rng));
    ema_sums.zero_();
    ema_counts.zero_();
    initialized.fill_(true);
    return;
  }
  const auto onehot = torch::one_hot(idx, NumCodes()).to(z.dtype());  // [M, N]
  const auto counts = onehot.sum(0);
  const auto sums = onehot.t().matmul(z);
  ema_counts.mul_(decay).add_(counts, 1.0 - decay);
  ema_sums.mul_(decay).add_(sums, 1.0 - decay);
  const auto total = ema_counts.sum();
  const auto smoothed = (ema_counts + eps) / (total + NumCodes() * eps) * total;
  const auto live = (ema_counts > 0).unsqueeze(1);
  entries.copy_(torch::where(live, ema_sums / smoothed.unsqueeze(1), entries));
  unused_steps.add_(1).masked_fill_(counts > 0, 0);
}

int CodebookImpl::ReseedDeadCodes(const torch::Tensor &z_in, std::mt19937_64 &rng) {
  torch::NoGradGuard guard;
  const auto dead = (unused_steps >= dead_code_steps).nonzero().reshape({-1});
  const int n = static_cast<int>(dead.size(0));
  if (n == 0) return 0;
  const auto z = z_in.detach().reshape({-1, Dim()}).to(entries.dtype());
  const auto rows = RandomRows(z, n, rng);
  entries.index_copy_(0, dead, rows);
  ema_sums.index_fill_(0, dead, 0.0);
  ema_counts.index_fill_(0, dead, 0.0);
  unused_steps.index_fill_(0, dead, 0);
  return n;
}

std::uint64_t CodebookImpl::Checksum() const {
  const auto e = entries.detach().to(torch::kFloat).contiguous();
  Fnv1a64 h;
  h.Update(e.data_ptr<float>(), e.numel() * sizeof(float));
  return h.Digest();
}

}  // namespace vcvts
