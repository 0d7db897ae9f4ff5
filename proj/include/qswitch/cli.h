// Copyright 2026 The qswitch Authors
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

#ifndef QSWITCH_CLI_H
#define QSWITCH_CLI_H

#include <ostream>
#include <string_view>

namespace qswitch {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitInputError = 2,
    kExitSizeCap = 3,
};

/// Entry point of the `qswitch` tool. Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace qswitch

#endif  // QSWITCH_CLI_H
