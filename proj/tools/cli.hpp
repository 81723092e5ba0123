#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace galscaf::cli {

/**
 * Runs one command line (without the program name). Reports go to `out`,
 * error records and usage messages to `err`.
 *
 * Exit status: 0 when every check passes, 1 when a check fails or the
 * library raises an error, 2 on a usage error.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace galscaf::cli
