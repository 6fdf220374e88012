// src/corpus/manifest.cc

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

#include "vcvts/corpus/manifest.h"

#include <filesystem>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "vcvts/base/error.h"

namespace vcvts {

namespace fs = std::filesystem;

std::string SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "train";
}

Split ParseSplit(const std::string &name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  throw ContractError("unknown split '" + name + "'");
}

const ManifestEntry &Manifest::Find(const std::string &sample_id) const {
  for (const ManifestEntry &e : entries)
    if (e.sample_id == sample_id) return e;
  throw ContractError("unknown sample id '" + sample_id + "'");
}

std::vector<const ManifestEntry *> Manifest::Entries(Split split) const {
  std::vector<const ManifestEntry *> out;
  for (const ManifestEntry &e : entries)
    if (e.split == split) out.push_back(&e);
  return out;
}

std::string Manifest::Resolve(const std::string &path) const {
  const fs::path p(path);
  return p.is_absolute() ? p.string() : (fs::path(base_dir) / p).string();
}

std::vector<std::string> Manifest::Speakers() const {
  std::set<std::string> s;
  for (const ManifestEntry &e : entries) s.insert(e.speaker_id);
  return {s.begin(), s.end()};
}

Manifest LoadManifest(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open manifest " + path);
  Manifest m;
  m.base_dir = fs::path(path).parent_path().string();
  if (m.base_dir.empty()) m.base_dir = ".";
  std::set<std::string> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(line_no) + ": ";
    ManifestEntry e;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      for (const char *key : {"sample_id", "wav_path", "lip_path", "speaker_id", "split"})
        if (!j.contains(key)) throw FormatError(std::string("missing field ") + key);
      e.sample_id = j.at("sample_id").get<std::string>();
      e.wav_path = j.at("wav_path").get<std::string>();
      e.lip_path = j.at("lip_path").get<std::string>();
      e.speaker_id = j.at("speaker_id").get<std::string>();
      e.split = ParseSplit(j.at("split").get<std::string>());
      if (j.contains("phoneme_alignment") && !j["phoneme_alignment"].is_null()) {
        std::vector<PhonemeSegment> segs;
        for (const auto &s : j["phoneme_alignment"]) {
          PhonemeSegment seg{s.at(0).get<int>(), s.at(1).get<int>(), s.at(2).get<int>()};
          if (seg.start < 0 || seg.end <= seg.start)
            throw FormatError("bad alignment segment");
          segs.push_back(seg);
        }
        e.alignment = std::move(segs);
      }
    } catch (const nlohmann::json::exception &ex) {
      throw FormatError(where + ex.what());
    } catch (const Error &ex) {
      throw FormatError(where + ex.what());
    }
    if (!ids.insert(e.sample_id).second)
      throw FormatError(where + "duplicate sample id '" + e.sample_id + "'");
    for (const std::string *p : {&e.wav_path, &e.lip_path})
      if (!fs::exists(m.Resolve(*p)))
        throw IoError(where + "missing file " + m.Resolve(*p));
    m.entries.push_back(std::move(e));
  }
  return m;
}

void WriteManifest(const Manifest &manifest, const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write manifest " + path);
  for (const ManifestEntry &e : manifest.entries) {
    nlohmann::ordered_json j;
    j["sample_id"] = e.sample_id;
    j["wav_path"] = e.wav_path;
    j["lip_path"] = e.lip_path;
    j["speaker_id"] = e.speaker_id;
    j["split"] = SplitName(e.split);
    if (e.alignment) {
      nlohmann::json segs = nlohmann::json::array();
      for (const PhonemeSegment &s : *e.alignment)
        segs.push_back({s.label, s.start, s.end});
      j["phoneme_alignment"] = segs;
    }
    os << j.dump() << '\n';
  }
  if (!os) throw IoError("error writing manifest " + path);
}

}  // namespace vcvts
