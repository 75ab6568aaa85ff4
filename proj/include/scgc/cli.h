// Copyright 2026 The SCGC Authors.
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

// The `scgc` command-line tool.
//
//   scgc train  (--dataset DIR | --sbm SPEC) [options]
//   scgc ablate --ablate MODE (--dataset DIR | --sbm SPEC) [options]
//   scgc sweep  --sweep {t,sigma,depth} --values V1,V2,... (...) [options]
//   scgc bench  (--dataset DIR | --sbm SPEC) [--repeats N] [options]
//   scgc sbm    --sbm SPEC --out DIR
//   scgc eval   --embeddings FILE --labels FILE --k K [--runs N] [--seed S]
//
// Exit codes: 0 success, 1 invalid configuration or usage, 2 unreadable or
// inconsistent data, 3 numerical failure.

#ifndef SCGC_CLI_H_
#define SCGC_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace scgc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumerical = 3;

// `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);
int RunCli(int argc, char** argv);

}  // namespace scgc

#endif  // SCGC_CLI_H_
