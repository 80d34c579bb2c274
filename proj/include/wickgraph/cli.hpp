#pragma once

namespace wickgraph {

// Full command-line tool: parses argv, runs the requested subcommand, and
// returns the process exit code (0 success, 1 verification failure, 2
// usage error).
int run_cli(int argc, char** argv);

}  // namespace wickgraph
