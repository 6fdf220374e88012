// include/vcvts/metrics/projection.h

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

#ifndef VCVTS_METRICS_PROJECTION_H_
#define VCVTS_METRICS_PROJECTION_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace vcvts {

struct TsneConfig {
  double perplexity = 10.0;
  int iterations = 500;
  int exaggeration_iterations = 100;
  double exaggeration = 12.0;
  std::uint64_t seed = 0;
};

/// Exact t-SNE of the rows of `x` into two dimensions, initialized from the
/// two leading principal components.
Eigen::MatrixXd Tsne(const Eigen::MatrixXd &x, const TsneConfig &cfg = {});

/// Mean silhouette coefficient of the rows of `x` under Euclidean distance.
double Silhouette(const Eigen::MatrixXd &x, const std::vector<int> &labels);

struct SpeakerProjection {
  Eigen::MatrixXd coords;  // n x 2
  double silhouette = 0.0;  // on the original embeddings
};

/// Requires at least two labels with three points each.
SpeakerProjection ProjectSpeakers(const Eigen::MatrixXd &embeddings,
                                  const std::vector<int> &labels,
                                  const TsneConfig &cfg = {});

/// Scatter plot of the projection, one colour per label.
std::string ProjectionSvg(const SpeakerProjection &projection,
                          const std::vector<int> &labels);

}  // namespace vcvts

#endif  // VCVTS_METRICS_PROJECTION_H_
