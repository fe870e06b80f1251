#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bider/bias.hpp"
#include "bider/errors.hpp"
#include "bider/trajectory.hpp"

namespace bider {

/// Biased forward difference over one step:
///
///     [y_next - (1 - eps*dt) * y_now] / dt
///
/// With eps = 0 this is the plain forward difference; in general it equals
/// the forward difference plus eps*y_now up to rounding.
inline double biased_difference(double y_now, double y_next, double dt, double eps) {
    if (!std::isfinite(y_now) || !std::isfinite(y_next) || !std::isfinite(eps) || !std::isfinite(dt))
        throw validation_error("biased difference: inputs must be finite");
    if (dt <= 0.0)
        throw validation_error("biased difference: dt must be positive");
    return (y_next - (1.0 - eps * dt) * y_now) / dt;
}

/// Known ordinary derivative lifted to the biased one: ydot + eps*y.
inline double biased_from_ordinary(double ydot, double y, double eps) {
    if (!std::isfinite(ydot) || !std::isfinite(y) || !std::isfinite(eps))
        throw validation_error("biased from ordinary: inputs must be finite");
    return ydot + eps * y;
}

namespace detail {

inline std::span<const double> single_channel(const trajectory& traj, const char* op) {
    if (traj.channel_count() != 1)
        throw validation_error(std::string(op) + ": expected a single-channel trajectory, got " +
                               std::to_string(traj.channel_count()) + " channels");
    if (traj.size() < 2)
        throw validation_error(std::string(op) + ": need at least 2 samples");
    return traj.values(0);
}

inline std::span<const double> single_channel_any_length(const trajectory& traj) {
    if (traj.channel_count() != 1)
        throw validation_error("positive part integral: expected a single-channel trajectory, got " +
                               std::to_string(traj.channel_count()) + " channels");
    return traj.values(0);
}

} // namespace detail

/// Samplewise biased difference of a single-channel trajectory. The
/// coefficient is evaluated at the left sample of each step. Output channel
/// "yodot" with n-1 samples on the one-shorter grid.
inline trajectory biased_derivative_series(const trajectory& traj, const bias_spec& bias) {
    auto y = detail::single_channel(traj, "biased derivative");
    check_bias_grid(bias, traj.grid());
    const double dt = traj.grid().dt;
    const std::size_t len = y.size() - 1;
    std::vector<double> out(len);
    for (std::size_t i = 0; i < len; ++i)
        out[i] = biased_difference(y[i], y[i + 1], dt, eval_bias(bias, y[i], i));
    return trajectory::single(time_grid{traj.grid().t0, dt, len}, "yodot", std::move(out));
}

/// Ordinary forward difference (y[i+1] - y[i]) / dt; channel "ydot", n-1 samples.
inline trajectory forward_difference(const trajectory& traj) {
    auto y = detail::single_channel(traj, "forward difference");
    const double dt = traj.grid().dt;
    const std::size_t len = y.size() - 1;
    std::vector<double> out(len);
    for (std::size_t i = 0; i < len; ++i)
        out[i] = (y[i + 1] - y[i]) / dt;
    return trajectory::single(time_grid{traj.grid().t0, dt, len}, "ydot", std::move(out));
}

/// Trapezoidal integral of max(v, 0) over the series span. Always >= 0 and
/// monotone in the integrand. Sign crossings are not sub-sample refined; the
/// clipping error is O(dt^2) per crossing.
inline double positive_part_integral(const trajectory& series) {
    auto v = detail::single_channel_any_length(series);
    const double dt = series.grid().dt;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        double a = std::max(v[i], 0.0);
        double b = std::max(v[i + 1], 0.0);
        total += 0.5 * dt * (a + b);
    }
    return total;
}

/// Trapezoidal integral of v restricted to samples where mask > 0 (no
/// clipping of v itself, so the result is signed). Series and mask must
/// share one grid.
inline double positive_part_integral(const trajectory& series, const trajectory& mask) {
    auto v = detail::single_channel_any_length(series);
    auto m = detail::single_channel_any_length(mask);
    if (!(series.grid() == mask.grid()))
        throw validation_error("positive part integral: mask grid does not match series grid");
    const double dt = series.grid().dt;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        double a = m[i] > 0.0 ? v[i] : 0.0;
        double b = m[i + 1] > 0.0 ? v[i + 1] : 0.0;
        total += 0.5 * dt * (a + b);
    }
    return total;
}

} // namespace bider
