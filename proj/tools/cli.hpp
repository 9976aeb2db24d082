// Copyright 2026 The egomotion Authors
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

#ifndef EGOMOTION_TOOLS_CLI_HPP_
#define EGOMOTION_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace egomotion::cli {

/// Runs the command line `args` (args[0] is the program name). Returns 0 on
/// success, 1 on a runtime error (reported as "error: <kind>: <message>" on
/// `err`) and 2 on a usage error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace egomotion::cli

#endif  // EGOMOTION_TOOLS_CLI_HPP_
