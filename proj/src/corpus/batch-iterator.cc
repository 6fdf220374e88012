// src/corpus/batch-iterator.cc

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

#include "vcvts/corpus/batch-iterator.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include <torch/torch.h>

#include "vcvts/base/error.h"

namespace vcvts {

BatchIterator::BatchIterator(const std::vector<AVSample> &data, const BatchOptions &opts)
    : data_(data), opts_(opts) {
  if (data.empty()) throw ContractError("batch iterator over an empty split");
  if (opts.batch_size < 1) throw ContractError("batch size must be >= 1");
  if (opts.crop_frames < kMelFramesPerLipFrame || opts.crop_frames % kMelFramesPerLipFrame)
    throw ContractError("crop_frames must be a positive multiple of 4");
  std::map<std::string, int> ids;
  for (const AVSample &s : data) ids.emplace(s.speaker_id, 0);
  int next = 0;
  for (auto &[id, index] : ids) {
    index = next++;
    speakers_.push_back(id);
  }
  for (const AVSample &s : data) speaker_index_.push_back(ids.at(s.speaker_id));
}

int BatchIterator::NumBatches() const {
  const int n = static_cast<int>(data_.size());
  return opts_.drop_last ? std::max(1, n / opts_.batch_size)
                         : (n + opts_.batch_size - 1) / opts_.batch_size;
}

std::vector<Batch> BatchIterator::Epoch(int epoch) const {
  std::seed_seq seq{static_cast<std::uint32_t>(opts_.seed),
                    static_cast<std::uint32_t>(opts_.seed >> 32),
                    static_cast<std::uint32_t>(epoch), 0xba7c4u};
  std::mt19937_64 rng(seq);
  const int n = static_cast<int>(data_.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<Batch> batches;
  const int count = NumBatches();
  for (int b = 0; b < count; ++b) {
    std::vector<int> items, starts;
    for (int i = b * opts_.batch_size; i < std::min(n, (b + 1) * opts_.batch_size); ++i) {
      const int item = order[i];
      const int lips = data_[item].mel.NumFrames() / kMelFramesPerLipFrame;
      const int span = lips - opts_.crop_frames / kMelFramesPerLipFrame;
      const int start = span > 0
          ? kMelFramesPerLipFrame * std::uniform_int_distribution<int>(0, span)(rng)
          : 0;
      items.push_back(item);
      starts.push_back(start);
    }
    batches.push_back(Assemble(items, starts));
  }
  return batches;
}

Batch BatchIterator::Assemble(const std::vector<int> &items,
                              const std::vector<int> &starts) const {
  const int B = static_cast<int>(items.size());
  const int crop = opts_.crop_frames;
  const int bins = data_[items[0]].mel.NumBins();
  Batch batch;
  batch.items = items;
  batch.starts = starts;
  batch.mel = torch::empty({B, crop, bins});
  batch.f0 = torch::zeros({B, crop});
  batch.voiced = torch::zeros({B, crop}, torch::kBool);
  batch.mask = torch::zeros({B, crop}, torch::kBool);
  batch.speaker = torch::empty({B}, torch::kInt64);
  const int lip_crop = crop / kMelFramesPerLipFrame;
  const LipSequence &first = data_[items[0]].lips;
  if (opts_.with_lips)
    batch.lips = torch::empty({B, lip_crop, first.height, first.width});

  auto mel = batch.mel.accessor<float, 3>();
  auto f0 = batch.f0.accessor<float, 2>();
  auto voiced = batch.voiced.accessor<bool, 2>();
  auto mask = batch.mask.accessor<bool, 2>();
  for (int b = 0; b < B; ++b) {
    const AVSample &s = data_[items[b]];
    const int T = s.mel.NumFrames();
    batch.speaker[b] = speaker_index_[items[b]];
    for (int t = 0; t < crop; ++t) {
      const int src = (starts[b] + t) % T;
      for (int k = 0; k < bins; ++k) mel[b][t][k] = s.mel.frames(src, k);
      f0[b][t] = s.f0.values[src];
      voiced[b][t] = s.f0.voiced[src] != 0;
      mask[b][t] = starts[b] + t < T;
    }
    if (opts_.with_lips) {
      if (s.lips.height != first.height || s.lips.width != first.width)
        throw ContractError("lip frame sizes differ within a batch");
      const int L = s.lips.num_frames;
      float *dst = batch.lips[b].data_ptr<float>();
      for (int j = 0; j < lip_crop; ++j) {
        const int src = (starts[b] / kMelFramesPerLipFrame + j) % L;
        std::copy_n(s.lips.pixels.data() + src * s.lips.FrameSize(), s.lips.FrameSize(),
                    dst + j * s.lips.FrameSize());
      }
    }
  }
  return batch;
}

}  // namespace vcvts
