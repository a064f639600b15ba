#pragma once

// Aggregate pass/fail run over the exact polynomial identities, the branch
// sum and product identities and the Jensen identity.

#include <cstddef>
#include <string>
#include <vector>

#include "branchlab/polycore.hpp"

namespace branchlab {

struct VerifyOptions {
    std::size_t n_max = 25;
    long K = 1000;
    // Applied to every polynomial the exact verifier generates (negative controls).
    PolyTamper tamper;
};

struct VerifyCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct VerifyReport {
    std::size_t n_max = 0;
    long K = 0;
    std::vector<VerifyCheck> checks;

    bool passed() const;
};

// Sum identities pass when abs_err < max(1e-3, 1/K) and the error at K is
// below the error at 10 (for K > 10); products when rel_err < max(2e-2, 1/K)
// and the Hadamard cross-relation holds to 1e-10; Jensen when the residual at
// (10, 1) and (50, 3) is below 1e-6.
VerifyReport verify_all(const VerifyOptions& opt = {});

double sum_threshold(long K);
double product_threshold(long K);

}  // namespace branchlab
