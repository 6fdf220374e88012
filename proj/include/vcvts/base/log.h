// include/vcvts/base/log.h

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

#ifndef VCVTS_BASE_LOG_H_
#define VCVTS_BASE_LOG_H_

#include <cstdio>
#include <string>

namespace vcvts {

// Thin logging front end.  Torch ships its own fmt headers, which clash with
// the system spdlog, so spdlog is only included from log.cc.
void LogInfo(const std::string &message);
void LogWarn(const std::string &message);
void LogError(const std::string &message);

/// "debug", "info", "warn", "error" or "off".
void SetLogLevel(const std::string &level);

/// printf-style formatting into a std::string.
template <typename... Args>
std::string StrFormat(const char *format, Args... args) {
  const int n = std::snprintf(nullptr, 0, format, args...);
  std::string out(n > 0 ? n : 0, '\0');
  if (n > 0) std::snprintf(out.data(), out.size() + 1, format, args...);
  return out;
}

}  // namespace vcvts

#endif  // VCVTS_BASE_LOG_H_
