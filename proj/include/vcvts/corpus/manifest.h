// include/vcvts/corpus/manifest.h

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

#ifndef VCVTS_CORPUS_MANIFEST_H_
#define VCVTS_CORPUS_MANIFEST_H_

#include <optional>
#include <string>
#include <vector>

#include "vcvts/media/align.h"

namespace vcvts {

enum class Split { kTrain, kDev, kTest };

std::string SplitName(Split split);
Split ParseSplit(const std::string &name);

struct ManifestEntry {
  std::string sample_id;
  std::string wav_path;  // relative to the manifest directory unless absolute
  std::string lip_path;
  std::string speaker_id;
  Split split = Split::kTrain;
  std::optional<std::vector<PhonemeSegment>> alignment;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::string base_dir = ".";

  /// Throws ContractError for an unknown id.
  const ManifestEntry &Find(const std::string &sample_id) const;
  std::vector<const ManifestEntry *> Entries(Split split) const;
  std::string Resolve(const std::string &path) const;
  /// Sorted distinct speaker ids.
  std::vector<std::string> Speakers() const;
};

/// Parses a JSON-lines manifest; blank lines are skipped.  Errors name the
/// offending line.  Paths are checked for existence and ids for uniqueness.
Manifest LoadManifest(const std::string &path);

void WriteManifest(const Manifest &manifest, const std::string &path);

}  // namespace vcvts

#endif  // VCVTS_CORPUS_MANIFEST_H_
