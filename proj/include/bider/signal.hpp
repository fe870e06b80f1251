#pragma once

#include <cmath>
#include <cstddef>
#include <variant>
#include <vector>

#include "bider/errors.hpp"
#include "bider/trajectory.hpp"

namespace bider {

struct step_signal {
    double amplitude = 1.0;
    double onset = 0.0; // u = 0 before onset, amplitude at and after it
};
struct harmonic_signal {
    double amplitude = 1.0;
    double omega = 1.0; // rad/s, nonzero
    double phase = 0.0; // rad; u(t) = amplitude * cos(omega*t + phase)
};
struct constant_signal {
    double value = 0.0;
};
struct tabulated_signal {
    trajectory series; // single channel; zero-order hold between samples
};

using input_signal = std::variant<step_signal, harmonic_signal, constant_signal, tabulated_signal>;

namespace detail {

inline void check_signal(const input_signal& sig) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, step_signal>) {
                if (!std::isfinite(s.amplitude) || !std::isfinite(s.onset))
                    throw validation_error("input signal: step parameters must be finite");
            } else if constexpr (std::is_same_v<T, harmonic_signal>) {
                if (!std::isfinite(s.amplitude) || !std::isfinite(s.omega) || !std::isfinite(s.phase))
                    throw validation_error("input signal: harmonic parameters must be finite");
                if (s.omega == 0.0)
                    throw validation_error("input signal: harmonic omega must be nonzero");
            } else if constexpr (std::is_same_v<T, constant_signal>) {
                if (!std::isfinite(s.value))
                    throw validation_error("input signal: constant value must be finite");
            } else {
                if (s.series.channel_count() != 1)
                    throw validation_error("input signal: tabulated series must have a single channel");
            }
        },
        sig);
}

// Hold-left sample index for a time that may sit a rounding error below a
// lattice point; snaps up when within 1e-9 of the next sample.
inline std::size_t hold_index(const time_grid& grid, double t) {
    double x = (t - grid.t0) / grid.dt;
    if (x <= 0.0)
        return 0;
    double fl = std::floor(x);
    if (x - fl > 1.0 - 1e-9)
        fl += 1.0;
    auto i = static_cast<std::size_t>(fl);
    return i >= grid.n ? grid.n - 1 : i;
}

inline double eval_unchecked(const input_signal& sig, double t) {
    return std::visit(
        [t](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, step_signal>) {
                return t >= s.onset ? s.amplitude : 0.0;
            } else if constexpr (std::is_same_v<T, harmonic_signal>) {
                return s.amplitude * std::cos(s.omega * t + s.phase);
            } else if constexpr (std::is_same_v<T, constant_signal>) {
                return s.value;
            } else {
                return s.series.at(0, detail::hold_index(s.series.grid(), t));
            }
        },
        sig);
}

} // namespace detail

/// Signal value at an arbitrary time.
inline double eval_signal(const input_signal& sig, double t) {
    detail::check_signal(sig);
    return detail::eval_unchecked(sig, t);
}

/// Signal sampled on `grid` as a single channel "u". A tabulated signal must
/// already live on that exact grid.
inline trajectory sample_input(const input_signal& sig, const time_grid& grid) {
    detail::check_signal(sig);
    if (const auto* tab = std::get_if<tabulated_signal>(&sig)) {
        if (!(tab->series.grid() == grid))
            throw validation_error("input signal: tabulated series grid does not match the sampling grid");
        return trajectory::single(grid, "u", {tab->series.values(0).begin(), tab->series.values(0).end()});
    }
    std::vector<double> u(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i)
        u[i] = detail::eval_unchecked(sig, grid.time(i));
    return trajectory::single(grid, "u", std::move(u));
}

} // namespace bider
