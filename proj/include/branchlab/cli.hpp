#pragma once

// Command-line front end: parses arguments, runs one subcommand and renders
// the {command, inputs, result, diagnostics} document.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "branchlab/common.hpp"

namespace branchlab {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitDomain = 2,
    kExitConvergence = 3,
    kExitCheckFailed = 4,
};

struct CliOutcome {
    int exit_code = kExitOk;
    std::string out;
    std::string err;
};

// Parses "a+bi" style complex literals: "1", "-0.5", "2+1i", "2-3.5i", "i",
// "-2i", "1e-3+2e2i". Throws std::invalid_argument on malformed input.
Complex parse_complex(std::string_view text);

// args excludes the program name. tol_env is the value of BRANCHLAB_TOL, if set.
CliOutcome run_cli(const std::vector<std::string>& args, std::optional<std::string> tol_env = std::nullopt);

}  // namespace branchlab
