#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>

#include "bider/errors.hpp"

namespace bider {

/// Uniform sampling lattice: time(i) = t0 + i*dt for 0 <= i < n.
///
/// Times are always derived by one multiply-add from (t0, dt, i), never by
/// cumulative summation, so time(i) is reproducible bit-for-bit from the
/// fields alone.
struct time_grid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t n = 2;

    double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    double span() const { return static_cast<double>(n - 1) * dt; }

    friend bool operator==(const time_grid&, const time_grid&) = default;
};

/// Validating constructor. Requires finite t0, finite dt > 0 and n >= 2.
/// (Derived series may carry shorter grids internally; anything built
/// through this entry point has at least two samples.)
inline time_grid make_grid(double t0, double dt, std::int64_t n) {
    if (!std::isfinite(t0) || !std::isfinite(dt))
        throw validation_error("time grid: t0 and dt must be finite");
    if (dt <= 0.0)
        throw validation_error("time grid: dt must be positive, got " + std::to_string(dt));
    if (n < 2)
        throw validation_error("time grid: need at least 2 samples, got " + std::to_string(n));
    return time_grid{t0, dt, static_cast<std::size_t>(n)};
}

} // namespace bider
