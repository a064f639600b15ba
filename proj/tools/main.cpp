#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "branchlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> tol_env;
    if (const char* v = std::getenv("BRANCHLAB_TOL")) tol_env = v;
    const branchlab::CliOutcome r = branchlab::run_cli(args, tol_env);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exit_code;
}
