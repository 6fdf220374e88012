// include/vcvts/base/error.h

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

#ifndef VCVTS_BASE_ERROR_H_
#define VCVTS_BASE_ERROR_H_

#include <stdexcept>
#include <string>

namespace vcvts {

/// Base class of every error thrown by this project.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// File missing, unreadable or unwritable.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed file contents (WAV, lip container, manifest, checkpoint...).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A caller violated an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Checkpoint or container written with an incompatible format version.
class VersionError : public Error {
 public:
  using Error::Error;
};

/// Stored checksum does not match the recomputed one, or two artifacts were
/// produced from different codebooks.
class ChecksumError : public Error {
 public:
  using Error::Error;
};

/// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace vcvts

#endif  // VCVTS_BASE_ERROR_H_
