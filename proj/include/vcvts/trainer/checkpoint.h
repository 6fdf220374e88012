// include/vcvts/trainer/checkpoint.h

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

#ifndef VCVTS_TRAINER_CHECKPOINT_H_
#define VCVTS_TRAINER_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>
#include <torch/nn/module.h>
#include <torch/types.h>

namespace vcvts {

constexpr std::uint32_t kCheckpointVersion = 1;

/// Container layout: "VCKP", u32 version, u64 header length, JSON header,
/// u32 tensor count, then per tensor {u32 name length, name, u8 dtype (0 =
/// f32), u32 rank, rank x u64 dims, row-major f32 payload}, and a trailing
/// u64 FNV-1a over every preceding byte.  All little-endian.
struct Checkpoint {
  std::string kind;  // "vc" or "lip2ind"
  nlohmann::json config;
  int epoch = 0;
  std::uint64_t seed = 0;
  std::uint64_t codebook_checksum = 0;
  nlohmann::json metrics;
  std::vector<std::pair<std::string, torch::Tensor>> tensors;
};

void SaveCheckpoint(const Checkpoint &ckpt, const std::string &path);

/// Throws VersionError for another format version and ChecksumError or
/// FormatError for damaged files.
Checkpoint LoadCheckpoint(const std::string &path);

/// Parameters and buffers of `module`, in registration order, as f32 copies.
std::vector<std::pair<std::string, torch::Tensor>> ModuleState(const torch::nn::Module &module);

/// Copies named tensors into `module`; every parameter and buffer must be
/// present with a matching shape.
void LoadModuleState(torch::nn::Module &module,
                     const std::vector<std::pair<std::string, torch::Tensor>> &tensors);

}  // namespace vcvts

#endif  // VCVTS_TRAINER_CHECKPOINT_H_
