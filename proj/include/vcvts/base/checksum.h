// include/vcvts/base/checksum.h

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

#ifndef VCVTS_BASE_CHECKSUM_H_
#define VCVTS_BASE_CHECKSUM_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace vcvts {

/// Incremental 64-bit FNV-1a hash.
class Fnv1a64 {
 public:
  void Update(std::span<const std::byte> bytes);
  void Update(const void *data, std::size_t size);
  std::uint64_t Digest() const { return state_; }
  /// 16 lowercase hex digits.
  std::string HexDigest() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string HexU64(std::uint64_t value);

}  // namespace vcvts

#endif  // VCVTS_BASE_CHECKSUM_H_
