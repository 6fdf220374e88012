// tests/unit/grad-check.h

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

// Central finite differences against autograd, shared by the unit and
// acceptance suites.

#ifndef VCVTS_TESTS_GRAD_CHECK_H_
#define VCVTS_TESTS_GRAD_CHECK_H_

#include <algorithm>
#include <functional>

#include <torch/torch.h>

namespace vcvts::testing {

/// ||analytic - numeric|| / max(||analytic||, ||numeric||) for the gradient
/// of `f` with respect to the double tensor `x` (modified in place while
/// probing, restored afterwards).
inline double GradientRelativeError(const std::function<torch::Tensor()> &f, torch::Tensor x,
                                    double step = 1e-6) {
  x.requires_grad_(true);
  if (x.grad().defined()) x.mutable_grad().zero_();
  const auto analytic = torch::autograd::grad({f()}, {x})[0].detach().clone();
  auto numeric = torch::zeros(analytic.sizes(), analytic.options());
  {
    torch::NoGradGuard guard;
    auto flat = x.view({-1});
    auto num = numeric.view({-1});
    for (int64_t i = 0; i < flat.numel(); ++i) {
      const double v = flat[i].item<double>();
      flat[i] = v + step;
      const double up = f().item<double>();
      flat[i] = v - step;
      const double down = f().item<double>();
      flat[i] = v;
      num[i] = (up - down) / (2.0 * step);
    }
  }
  const double scale =
      std::max({analytic.norm().item<double>(), numeric.norm().item<double>(), 1e-12});
  return (analytic - numeric).norm().item<double>() / scale;
}

}  // namespace vcvts::testing

#endif  // VCVTS_TESTS_GRAD_CHECK_H_
