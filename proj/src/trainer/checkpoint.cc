// src/trainer/checkpoint.cc

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

#include "vcvts/trainer/checkpoint.h"

#include <filesystem>
#include <fstream>
#include <map>
#include <cstring>
#include <iterator>
#include <sstream>

#include <torch/torch.h>

#include "vcvts/base/binary-io.h"
#include "vcvts/base/checksum.h"
#include "vcvts/base/error.h"

namespace vcvts {

namespace {

constexpr char kMagic[4] = {'V', 'C', 'K', 'P'};

// Bounds on untrusted sizes read back from disk.
constexpr std::uint64_t kMaxHeaderBytes = 1ull << 26;
constexpr std::uint32_t kMaxNameBytes = 4096;
constexpr std::uint32_t kMaxRank = 8;

std::string ReadBytes(std::istream &is, std::uint64_t n, const std::string &what) {
  std::string s(n, '\0');
  is.read(s.data(), static_cast<std::streamsize>(n));
  if (static_cast<std::uint64_t>(is.gcount()) != n)
    throw FormatError("unexpected end of data while reading " + what);
  return s;
}

}  // namespace

void SaveCheckpoint(const Checkpoint &ckpt, const std::string &path) {
  std::ostringstream os(std::ios::binary);
  os.write(kMagic, 4);
  WriteLe<std::uint32_t>(os, kCheckpointVersion);
  nlohmann::ordered_json header;
  header["version"] = kCheckpointVersion;
  header["kind"] = ckpt.kind;
  header["epoch"] = ckpt.epoch;
  header["seed"] = ckpt.seed;
  header["codebook_checksum"] = HexU64(ckpt.codebook_checksum);
  header["config"] = ckpt.config;
  header["metrics"] = ckpt.metrics;
  const std::string text = header.dump();
  WriteLe<std::uint64_t>(os, text.size());
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  WriteLe<std::uint32_t>(os, static_cast<std::uint32_t>(ckpt.tensors.size()));
  for (const auto &[name, tensor] : ckpt.tensors) {
    const auto t = tensor.detach().to(torch::kFloat).contiguous();
    WriteLe<std::uint32_t>(os, static_cast<std::uint32_t>(name.size()));
    os.write(name.data(), static_cast<std::streamsize>(name.size()));
    WriteLe<std::uint8_t>(os, 0);
    WriteLe<std::uint32_t>(os, static_cast<std::uint32_t>(t.dim()));
    for (auto d : t.sizes()) WriteLe<std::uint64_t>(os, static_cast<std::uint64_t>(d));
    os.write(reinterpret_cast<const char *>(t.data_ptr<float>()),
             static_cast<std::streamsize>(t.numel() * sizeof(float)));
  }
  const std::string body = os.str();
  Fnv1a64 h;
  h.Update(body.data(), body.size());

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint " + tmp);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    WriteLe<std::uint64_t>(out, h.Digest());
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint LoadCheckpoint(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint " + path);
  const std::string data{std::istreambuf_iterator<char>(in), {}};
  if (data.size() < 4 + 4 + 8 + 8 || data.compare(0, 4, kMagic, 4) != 0)
    throw FormatError(path + ": not a checkpoint");
  std::istringstream is(data, std::ios::binary);
  is.seekg(4);
  const auto version = ReadLe<std::uint32_t>(is, "version");
  if (version != kCheckpointVersion)
    throw VersionError(path + ": checkpoint format version " + std::to_string(version) +
                       ", this build reads version " + std::to_string(kCheckpointVersion));
  Fnv1a64 h;
  h.Update(data.data(), data.size() - 8);
  std::uint64_t stored;
  std::memcpy(&stored, data.data() + data.size() - 8, 8);
  if (stored != h.Digest())
    throw ChecksumError(path + ": checkpoint is corrupt or truncated (checksum mismatch)");

  Checkpoint ckpt;
  try {
    const auto header_len = ReadLe<std::uint64_t>(is, "header length");
    if (header_len > kMaxHeaderBytes) throw FormatError("header too large");
    const auto header = nlohmann::json::parse(ReadBytes(is, header_len, "header"));
    ckpt.kind = header.at("kind").get<std::string>();
    ckpt.epoch = header.at("epoch").get<int>();
    ckpt.seed = header.at("seed").get<std::uint64_t>();
    ckpt.codebook_checksum =
        std::stoull(header.at("codebook_checksum").get<std::string>(), nullptr, 16);
    ckpt.config = header.at("config");
    ckpt.metrics = header.value("metrics", nlohmann::json::object());
    const auto count = ReadLe<std::uint32_t>(is, "tensor count");
    for (std::uint32_t i = 0; i < count; ++i) {
      const auto name_len = ReadLe<std::uint32_t>(is, "name length");
      if (name_len > kMaxNameBytes) throw FormatError("tensor name too long");
      std::string name = ReadBytes(is, name_len, "tensor name");
      if (ReadLe<std::uint8_t>(is, "dtype") != 0) throw FormatError("unsupported dtype");
      const auto rank = ReadLe<std::uint32_t>(is, "rank");
      if (rank > kMaxRank) throw FormatError("tensor rank too large");
      std::vector<int64_t> dims(rank);
      std::uint64_t numel = 1;
      for (auto &d : dims) {
        d = static_cast<int64_t>(ReadLe<std::uint64_t>(is, "dims"));
        numel *= static_cast<std::uint64_t>(d);
      }
      if (numel * sizeof(float) > data.size()) throw FormatError("tensor larger than file");
      const std::string payload = ReadBytes(is, numel * sizeof(float), "tensor payload");
      auto t = torch::empty(dims, torch::kFloat);
      std::memcpy(t.data_ptr<float>(), payload.data(), payload.size());
      ckpt.tensors.emplace_back(std::move(name), t);
    }
    if (static_cast<std::size_t>(is.tellg()) != data.size() - 8)
      throw FormatError("trailing bytes after tensors");
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(path + ": bad checkpoint header: " + e.what());
  } catch (const FormatError &e) {
    throw FormatError(path + ": " + e.what());
  }
  return ckpt;
}

std::vector<std::pair<std::string, torch::Tensor>> ModuleState(const torch::nn::Module &module) {
  std::vector<std::pair<std::string, torch::Tensor>> out;
  for (const auto &p : module.named_parameters(true))
    out.emplace_back(p.key(), p.value().detach().to(torch::kFloat).clone());
  for (const auto &b : module.named_buffers(true))
    out.emplace_back(b.key(), b.value().detach().to(torch::kFloat).clone());
  return out;
}

void LoadModuleState(torch::nn::Module &module,
                     const std::vector<std::pair<std::string, torch::Tensor>> &tensors) {
  std::map<std::string, torch::Tensor> by_name(tensors.begin(), tensors.end());
  torch::NoGradGuard guard;
  auto assign = [&](const std::string &name, torch::Tensor &dst) {
    const auto it = by_name.find(name);
    if (it == by_name.end()) throw FormatError("checkpoint lacks tensor " + name);
    if (it->second.sizes() != dst.sizes())
      throw FormatError("checkpoint tensor " + name + " has a different shape");
    dst.copy_(it->second.to(dst.dtype()));
  };
  for (auto &p : module.named_parameters(true)) assign(p.key(), p.value());
  for (auto &b : module.named_buffers(true)) assign(b.key(), b.value());
}

}  // namespace vcvts
