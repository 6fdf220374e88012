// src/metrics/projection.cc

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

#include "vcvts/metrics/projection.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include <Eigen/SVD>

#include "vcvts/base/error.h"

namespace vcvts {

namespace {

Eigen::MatrixXd SquaredDistances(const Eigen::MatrixXd &x) {
  const Eigen::VectorXd sq = x.rowwise().squaredNorm();
  Eigen::MatrixXd d = -2.0 * x * x.transpose();
  d.colwise() += sq;
  d.rowwise() += sq.transpose();
  return d.cwiseMax(0.0);
}

// Row-conditional affinities whose entropy matches log(perplexity).
Eigen::MatrixXd ConditionalAffinities(const Eigen::MatrixXd &d2, double perplexity) {
  const Eigen::Index n = d2.rows();
  const double target = std::log(perplexity);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double beta = 1.0, lo = 0.0, hi = std::numeric_limits<double>::infinity();
    Eigen::VectorXd row(n);
    for (int iter = 0; iter < 100; ++iter) {
      double sum = 0.0, weighted = 0.0;
      double dmin = std::numeric_limits<double>::infinity();
      for (Eigen::Index j = 0; j < n; ++j)
        if (j != i) dmin = std::min(dmin, d2(i, j));
      for (Eigen::Index j = 0; j < n; ++j) {
        row(j) = j == i ? 0.0 : std::exp(-beta * (d2(i, j) - dmin));
        sum += row(j);
        weighted += row(j) * (d2(i, j) - dmin);
      }
      const double entropy = std::log(sum) + beta * weighted / sum;
      row /= sum;
      const double diff = entropy - target;
      if (std::abs(diff) < 1e-5) break;
      if (diff > 0) {
        lo = beta;
        beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
      } else {
        hi = beta;
        beta = 0.5 * (beta + lo);
      }
    }
    p.row(i) = row.transpose();
  }
  return p;
}

}  // namespace

Eigen::MatrixXd Tsne(const Eigen::MatrixXd &x, const TsneConfig &cfg) {
  const Eigen::Index n = x.rows();
  if (n < 2) throw ContractError("t-SNE needs at least two points");
  if (!x.allFinite()) throw ContractError("t-SNE input is not finite");
  const double perplexity =
      std::clamp(cfg.perplexity, 1.0, std::max(1.0, (n - 1) / 3.0));

  Eigen::MatrixXd p = ConditionalAffinities(SquaredDistances(x), perplexity);
  p = (p + p.transpose()) / (2.0 * n);
  p = p.cwiseMax(1e-12);

  const Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, 2);
  const Eigen::Index k = std::min<Eigen::Index>(2, svd.singularValues().size());
  for (Eigen::Index c = 0; c < k; ++c)
    y.col(c) = svd.matrixU().col(c) * svd.singularValues()(c);
  const double sd = std::sqrt((y.col(0).array() - y.col(0).mean()).square().mean());
  if (sd > 0) y *= 1e-4 / sd;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> jitter(0.0, 1e-8);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int c = 0; c < 2; ++c) y(i, c) += jitter(rng);

  const double lr = std::max(n / cfg.exaggeration / 4.0, 50.0);
  Eigen::MatrixXd update = Eigen::MatrixXd::Zero(n, 2);
  Eigen::MatrixXd gains = Eigen::MatrixXd::Ones(n, 2);
  for (int it = 0; it < cfg.iterations; ++it) {
    const bool early = it < cfg.exaggeration_iterations;
    const double exaggeration = early ? cfg.exaggeration : 1.0;
    const double momentum = early ? 0.5 : 0.8;
    Eigen::MatrixXd num = (1.0 + SquaredDistances(y).array()).inverse().matrix();
    num.diagonal().setZero();
    const double z = std::max(num.sum(), 1e-300);
    const Eigen::MatrixXd w =
        ((exaggeration * p).array() - num.array() / z).matrix().cwiseProduct(num);
    Eigen::MatrixXd grad(n, 2);
    const Eigen::VectorXd wsum = w.rowwise().sum();
    grad = 4.0 * (wsum.asDiagonal() * y - w * y);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (int c = 0; c < 2; ++c) {
        const bool same = (grad(i, c) > 0) == (update(i, c) > 0);
        gains(i, c) = std::max(same ? gains(i, c) * 0.8 : gains(i, c) + 0.2, 0.01);
        update(i, c) = momentum * update(i, c) - lr * gains(i, c) * grad(i, c);
      }
    }
    y += update;
    y.rowwise() -= y.colwise().mean();
  }
  return y;
}

double Silhouette(const Eigen::MatrixXd &x, const std::vector<int> &labels) {
  const Eigen::Index n = x.rows();
  if (static_cast<Eigen::Index>(labels.size()) != n)
    throw ContractError("silhouette: one label per row required");
  std::map<int, int> sizes;
  for (int l : labels) ++sizes[l];
  if (sizes.size() < 2) throw ContractError("silhouette needs two groups");
  const Eigen::MatrixXd d = SquaredDistances(x).cwiseSqrt();
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::map<int, double> sums;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) sums[labels[j]] += d(i, j);
    const int own = labels[i];
    if (sizes[own] < 2) continue;
    const double a = sums[own] / (sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (const auto &[label, size] : sizes)
      if (label != own) b = std::min(b, sums[label] / size);
    const double denom = std::max(a, b);
    total += denom > 0 ? (b - a) / denom : 0.0;
  }
  return total / n;
}

SpeakerProjection ProjectSpeakers(const Eigen::MatrixXd &embeddings,
                                  const std::vector<int> &labels,
                                  const TsneConfig &cfg) {
  std::map<int, int> sizes;
  for (int l : labels) ++sizes[l];
  int groups = 0;
  for (const auto &[label, size] : sizes)
    if (size >= 3) ++groups;
  if (groups < 2 || static_cast<Eigen::Index>(labels.size()) != embeddings.rows())
    throw ContractError("projection needs two groups of at least three points");
  return {Tsne(embeddings, cfg), Silhouette(embeddings, labels)};
}

std::string ProjectionSvg(const SpeakerProjection &projection,
                          const std::vector<int> &labels) {
  const double size = 500, margin = 20;
  const Eigen::MatrixXd &c = projection.coords;
  const Eigen::RowVectorXd lo = c.colwise().minCoeff(), hi = c.colwise().maxCoeff();
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size
     << "\" height=\"" << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    auto scale = [&](int k) {
      const double span = hi(k) - lo(k);
      return margin + (span > 0 ? (c(i, k) - lo(k)) / span : 0.5) * (size - 2 * margin);
    };
    os << "<circle cx=\"" << scale(0) << "\" cy=\"" << scale(1)
       << "\" r=\"4\" fill=\"hsl(" << (labels[i] * 67) % 360 << ",70%,45%)\"/>\n";
  }
  os << "<text x=\"" << margin << "\" y=\"" << size - 4
     << "\" font-size=\"11\">silhouette " << projection.silhouette << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace vcvts
