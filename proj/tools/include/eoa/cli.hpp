// Copyright 2026 The eoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "eoa/error.hpp"

namespace eoa {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitResource = 4;

/// Process exit code for a library error.
int exitCodeFor(ErrorCode code);

/// Runs one command line (args excludes the program name). Reports go to
/// 'out', diagnostics to 'err'. A state path of "-" reads from 'in'.
int runCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// The embedded golden suite; one PASS/FAIL line per check.
int runSelftest(std::ostream& out);

}  // namespace eoa
