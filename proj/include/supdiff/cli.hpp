#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace supdiff {

/**
 * Batch front-end.  args is the command line without the program name.
 * Reports go to `out` (and to the --json path plus an adjacent .txt file);
 * diagnostics go to `err`.  Returns the process exit code: 0 success or
 * condition holds, 1 usage or parse error, 2 hypothesis refusal, 3 condition
 * does not hold or formulas disagree.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace supdiff
