/*
 * Copyright 2026 The rulefuse Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RULEFUSE_CLI_H_
#define RULEFUSE_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace rulefuse::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,
  kDataError = 2,
  kInternalError = 3,
};

// Runs `rulefuse <args...>` (args exclude the program name).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace rulefuse::cli

#endif  // RULEFUSE_CLI_H_
