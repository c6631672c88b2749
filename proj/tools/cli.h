// Copyright 2026 The mzisim Authors
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

#ifndef MZI_TOOLS_CLI_H
#define MZI_TOOLS_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace mzi {

/// Entry point of the `mzi` command. `args` excludes the program name.
/// CSV goes to `out` unless --out names a file; diagnostics go to `err`.
/// Returns 0 on success, 2 on usage or validation errors and 1 on runtime or
/// I/O errors.
int run_cli(std::vector<std::string> args, std::ostream &out, std::ostream &err);

}  // namespace mzi

#endif
