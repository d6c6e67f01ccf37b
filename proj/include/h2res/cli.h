// Copyright 2026 The h2res Authors.
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


#ifndef H2RES_CLI_H_
#define H2RES_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace h2res {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitIo = 3;

// Runs one command; args exclude the program name. Verbosity comes from the
// H2RES_LOG environment variable (quiet, info, debug).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace h2res

#endif  // H2RES_CLI_H_
