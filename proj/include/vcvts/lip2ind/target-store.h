// include/vcvts/lip2ind/target-store.h

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

#ifndef VCVTS_LIP2IND_TARGET_STORE_H_
#define VCVTS_LIP2IND_TARGET_STORE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vcvts {

/// Content-encoder indices per sample, tagged with the codebook they came
/// from.  On disk: <dir>/<sample_id>.idx as little-endian u16 values, plus
/// <dir>/targets.json holding the codebook checksum, N and the sample ids.
struct TargetStore {
  std::uint64_t codebook_checksum = 0;
  int num_codes = 0;
  std::map<std::string, std::vector<int>> indices;

  const std::vector<int> &At(const std::string &sample_id) const;
};

void WriteTargetStore(const TargetStore &store, const std::string &dir);

/// Throws ChecksumError when `expected_checksum` is given and differs from
/// the recorded one.
TargetStore LoadTargetStore(const std::string &dir,
                            std::optional<std::uint64_t> expected_checksum = std::nullopt);

}  // namespace vcvts

#endif  // VCVTS_LIP2IND_TARGET_STORE_H_
