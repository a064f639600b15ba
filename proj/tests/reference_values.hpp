#pragma once

#include <array>

#include "branchlab/common.hpp"

namespace branchlab::testing {

struct BranchSample {
    long k;
    double x;
    Complex w;  // printed to five decimals, truncated
};

inline constexpr std::array<BranchSample, 12> kPrintedBranchTable{{
    {-2, -1.0, {-2.06227, -7.58863}},
    {-1, -1.0, {-0.31813, -1.33723}},
    {0, -1.0, {-0.31813, 1.33723}},
    {1, -1.0, {-2.06227, 7.58863}},
    {-2, -0.1, {-4.44909, -7.30706}},
    {-1, -0.1, {-3.57715, 0.0}},
    {0, -0.1, {-0.11183, 0.0}},
    {1, -0.1, {-4.44909, 7.30706}},
    {-2, 1.0, {-2.40158, -10.77629}},
    {-1, 1.0, {-1.53391, -4.37518}},
    {0, 1.0, {0.56714, 0.0}},
    {1, 1.0, {-1.53391, 4.37518}},
}};

}  // namespace branchlab::testing
