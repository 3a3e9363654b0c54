// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vabset {

/// Exit status of cli_run.
enum ExitCode : int { kExitOk = 0, kExitParse = 1, kExitSemantic = 2 };

/// Runs one verb; `args` excludes the program name.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vabset
