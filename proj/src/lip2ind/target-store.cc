// src/lip2ind/target-store.cc

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

#include "vcvts/lip2ind/target-store.h"

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "vcvts/base/binary-io.h"
#include "vcvts/base/checksum.h"
#include "vcvts/base/error.h"

namespace vcvts {

namespace fs = std::filesystem;

const std::vector<int> &TargetStore::At(const std::string &sample_id) const {
  const auto it = indices.find(sample_id);
  if (it == indices.end()) throw ContractError("no index targets for sample " + sample_id);
  return it->second;
}

void WriteTargetStore(const TargetStore &store, const std::string &dir) {
  if (store.num_codes < 1 || store.num_codes > 65536)
    throw ContractError("target store: num_codes must fit u16");
  fs::create_directories(dir);
  nlohmann::ordered_json meta;
  meta["codebook_checksum"] = HexU64(store.codebook_checksum);
  meta["num_codes"] = store.num_codes;
  meta["samples"] = nlohmann::json::array();
  for (const auto &[id, seq] : store.indices) {
    const fs::path path = fs::path(dir) / (id + ".idx");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot write " + path.string());
    for (int i : seq) {
      if (i < 0 || i >= store.num_codes)
        throw ContractError("target store: index " + std::to_string(i) + " out of range");
      WriteLe<std::uint16_t>(os, static_cast<std::uint16_t>(i));
    }
    if (!os) throw IoError("write failed: " + path.string());
    meta["samples"].push_back({{"sample_id", id}, {"length", seq.size()}});
  }
  const fs::path meta_path = fs::path(dir) / "targets.json";
  std::ofstream os(meta_path);
  if (!os) throw IoError("cannot write " + meta_path.string());
  os << meta.dump(2) << "\n";
}

TargetStore LoadTargetStore(const std::string &dir,
                            std::optional<std::uint64_t> expected_checksum) {
  const fs::path meta_path = fs::path(dir) / "targets.json";
  std::ifstream is(meta_path);
  if (!is) throw IoError("cannot open " + meta_path.string());
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(meta_path.string() + ": " + e.what());
  }
  TargetStore store;
  try {
    store.codebook_checksum = std::stoull(meta.at("codebook_checksum").get<std::string>(), nullptr, 16);
    store.num_codes = meta.at("num_codes").get<int>();
  } catch (const std::exception &e) {
    throw FormatError(meta_path.string() + ": " + e.what());
  }
  if (expected_checksum && *expected_checksum != store.codebook_checksum)
    throw ChecksumError("index targets in " + dir + " come from codebook " +
                        HexU64(store.codebook_checksum) + ", expected " +
                        HexU64(*expected_checksum));
  for (const auto &s : meta.at("samples")) {
    const std::string id = s.at("sample_id").get<std::string>();
    const auto length = s.at("length").get<std::size_t>();
    const fs::path path = fs::path(dir) / (id + ".idx");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<int> seq(length);
    for (auto &v : seq) {
      v = ReadLe<std::uint16_t>(in, path.string());
      if (v >= store.num_codes) throw FormatError(path.string() + ": index out of range");
    }
    if (in.peek() != std::char_traits<char>::eof())
      throw FormatError(path.string() + ": trailing bytes");
    store.indices.emplace(id, std::move(seq));
  }
  return store;
}

}  // namespace vcvts
