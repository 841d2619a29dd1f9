// Copyright 2026 The sapeval Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SAPEVAL_TOOLS_CLI_HPP_
#define SAPEVAL_TOOLS_CLI_HPP_

#include <iosfwd>

namespace sapeval::cli {

// Runs the `sapeval` command line. "-" as a file name means `in` / `out`.
// Diagnostics go to `err`. Returns the process exit status.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

// Asks a running `serve` or `stub-scorer` command to return.
void request_shutdown();

}  // namespace sapeval::cli

#endif  // SAPEVAL_TOOLS_CLI_HPP_
