// Copyright 2026 The Tonoseg Authors
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

#ifndef TONOSEG_CLI_H_
#define TONOSEG_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace tonoseg {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInputData = 2;
inline constexpr int kExitInternal = 3;

// Runs one `tonoseg` invocation. args[0] is the program name. Reports go to
// `out` unless --out is given; failures print one diagnostic line to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tonoseg

#endif  // TONOSEG_CLI_H_
