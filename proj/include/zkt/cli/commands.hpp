// Copyright 2026 The zkt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <string>
#include <vector>

namespace zkt {

// Process exit codes of the command-line tool.
enum ExitCode : int { kExitAccept = 0, kExitReject = 1, kExitUsage = 2, kExitIo = 3 };

// Parses and runs one invocation; args exclude the program name.
// Messages go to stdout/stderr, the result is the exit code.
int run_cli(const std::vector<std::string>& args);

}  // namespace zkt
