// include/vcvts/corpus/batch-iterator.h

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

#ifndef VCVTS_CORPUS_BATCH_ITERATOR_H_
#define VCVTS_CORPUS_BATCH_ITERATOR_H_

#include <cstdint>
#include <string>
#include <vector>

#include <torch/types.h>

#include "vcvts/corpus/av-sample.h"

namespace vcvts {

/// A batch of co-cropped streams.  Crops shorter than the requested length
/// are filled by repeating the clip from its start and masked out.
struct Batch {
  torch::Tensor mel;        // [B, crop, bins] float
  torch::Tensor lips;       // [B, crop/4, H, W] float, empty unless requested
  torch::Tensor f0;         // [B, crop] Hz, 0 where unvoiced
  torch::Tensor voiced;     // [B, crop] bool
  torch::Tensor mask;       // [B, crop] bool, false on padding
  torch::Tensor speaker;    // [B] int64 speaker index
  std::vector<int> items;   // dataset positions
  std::vector<int> starts;  // mel crop start per item (multiple of 4)

  int size() const { return static_cast<int>(items.size()); }
};

struct BatchOptions {
  int batch_size = 32;
  int crop_frames = 96;
  std::uint64_t seed = 0;
  bool with_lips = false;
  bool drop_last = false;
};

/// Epoch-seeded shuffling and cropping over an in-memory dataset.
class BatchIterator {
 public:
  BatchIterator(const std::vector<AVSample> &data, const BatchOptions &opts);

  int NumBatches() const;
  /// All batches of one epoch; identical for identical (seed, epoch).
  std::vector<Batch> Epoch(int epoch) const;
  /// Speaker index of every dataset item (sorted speaker ids).
  const std::vector<int> &SpeakerIndex() const { return speaker_index_; }
  const std::vector<std::string> &Speakers() const { return speakers_; }

 private:
  Batch Assemble(const std::vector<int> &items, const std::vector<int> &starts) const;

  const std::vector<AVSample> &data_;
  BatchOptions opts_;
  std::vector<std::string> speakers_;
  std::vector<int> speaker_index_;
};

}  // namespace vcvts

#endif  // VCVTS_CORPUS_BATCH_ITERATOR_H_
