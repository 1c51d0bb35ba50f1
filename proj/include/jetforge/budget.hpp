#pragma once

#include <cstddef>

namespace jetforge {

/// Resource caps for symbolic computations. Exceeding any cap raises
/// budget_error; results are never silently truncated.
struct Budget {
    std::size_t max_pairs = 10000; ///< S-pairs processed per Groebner run
    std::size_t max_basis = 2000;  ///< basis elements per Groebner run
    int depth = 4;                 ///< extension depth for arc-level probes
    int power_bound = 4;           ///< exponent cap for bounded-power radical evidence
};

} // namespace jetforge
