#pragma once

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <string>

namespace maxrank {

// Neumaier-compensated sum; accumulation error stays O(eps) independent of
// length, so tolerance checks against it measure the mathematical sum.
inline double neumaier_sum(std::span<const double> xs) {
    double sum = 0.0;
    double comp = 0.0;
    for (double x : xs) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

// Fixed block width for deterministic parallel reductions: block partials are
// accumulated serially inside each block and combined in block order, so the
// result does not depend on the number of worker threads.
inline constexpr std::size_t kReductionBlock = 4096;

// Shortest decimal that parses back to the same double.
inline std::string format_double(double x) {
    char buf[40];
    for (int prec = 1; prec < 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace maxrank
