// include/vcvts/cli/cli.h

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

#ifndef VCVTS_CLI_CLI_H_
#define VCVTS_CLI_CLI_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace vcvts {

/// Process exit codes of the `vcvts` tool.
enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitFailure = 2 };

/// Built-in defaults of every configurable section, as written to TOML:
/// analysis, corpus, vc, train_vc, lip2ind, train_lip2ind, synthesis,
/// evaluate.
nlohmann::json DefaultCliConfig();

/// Layers `env_seed` (every seed key), then the TOML document (a top-level
/// `seed` sets every seed key before section keys apply) over the defaults.
/// Unknown keys and type mismatches throw FormatError.
nlohmann::json ResolveCliConfig(const std::optional<std::string> &toml_text,
                                std::optional<std::uint64_t> env_seed);

/// Runs one subcommand; args[0] is the program name.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace vcvts

#endif  // VCVTS_CLI_CLI_H_
