// src/base/log.cc

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

#include "vcvts/base/log.h"

#include <spdlog/spdlog.h>

#include "vcvts/base/error.h"

namespace vcvts {

void LogInfo(const std::string &message) { spdlog::info("{}", message); }
void LogWarn(const std::string &message) { spdlog::warn("{}", message); }
void LogError(const std::string &message) { spdlog::error("{}", message); }

void SetLogLevel(const std::string &level) {
  const auto l = spdlog::level::from_str(level);
  if (l == spdlog::level::off && level != "off")
    throw ContractError("unknown log level '" + level + "'");
  spdlog::set_level(l);
}

}  // namespace vcvts
