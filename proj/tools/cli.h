// Copyright 2026 The kshapiq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KSHAPIQ_TOOLS_CLI_H_
#define KSHAPIQ_TOOLS_CLI_H_

#include <iosfwd>

namespace kshapiq::cli {

// Exit codes. CLI11 parse errors keep CLI11's own nonzero codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;  // validate-conjectures found a failure
inline constexpr int kExitBadInput = 3;     // infeasible or inconsistent options
inline constexpr int kExitIo = 4;           // unreadable or unwritable files
inline constexpr int kExitInternal = 5;

// Runs the command line; results go to `out` unless --out is given,
// diagnostics to `err`.
int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kshapiq::cli

#endif  // KSHAPIQ_TOOLS_CLI_H_
