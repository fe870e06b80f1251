#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "bider/bias.hpp"
#include "bider/calculus.hpp"
#include "bider/errors.hpp"
#include "bider/time_grid.hpp"
#include "bider/trajectory.hpp"

namespace bider {

/// Period of the default harmonic carrier cos(t/2).
inline constexpr double case_study_period = 4.0 * std::numbers::pi;

/// Accumulated positive change of one bias state, with its sphere-size
/// representation (volume = accumulation by convention).
struct accumulation_result {
    std::string state_name;
    double accumulation = 0.0;
    double sphere_volume = 0.0;
    double sphere_radius = 0.0;
};

/// Which samples count toward the accumulation: the positive part of the
/// derivative series itself, or the raw derivative wherever the carrier
/// signal is positive.
enum class accumulation_mask { positive_changes, positive_signal };

/// The harmonic carrier together with its three bias-state derivative series
/// ("model", "proportional", "bubble") and, once computed, their
/// accumulations.
struct case_study_result {
    time_grid grid;           ///< sampling grid of the carrier
    trajectory carrier;       ///< y(t) = cos(t/2), channel "y"
    trajectory states;        ///< channels model/proportional/bubble, one sample shorter
    std::vector<accumulation_result> accumulations; ///< empty until accumulated
};

/// Pointwise difference of the bubble and model states, with its peak.
struct enhancement_result {
    trajectory series; ///< channel "enhancement"
    double peak_time = 0.0;
    double peak_value = 0.0;
};

/// Grid covering `periods` full carrier periods at the given step.
inline time_grid case_study_grid(double dt, double periods = 1.0) {
    if (!std::isfinite(dt) || dt <= 0.0)
        throw validation_error("case study: dt must be finite and positive");
    if (!std::isfinite(periods) || periods <= 0.0)
        throw validation_error("case study: periods must be finite and positive");
    const double span = periods * case_study_period;
    const auto steps = static_cast<std::int64_t>(std::llround(span / dt));
    return make_grid(0.0, dt, steps + 1);
}

/// Samples y(t) = cos(t/2) on the grid and differentiates it under the three
/// bias states: zero ("model"), constant 0.6 ("proportional"), and
/// state-proportional 0.6*y ("bubble"). The grid must span at least one full
/// period.
inline case_study_result case_study_states(const time_grid& grid) {
    if (grid.n < 2)
        throw validation_error("case study: grid needs at least 2 samples");
    if (grid.span() < case_study_period - 0.5 * grid.dt)
        throw validation_error("case study: grid spans " + std::to_string(grid.span()) +
                               ", shorter than one carrier period " + std::to_string(case_study_period));

    std::vector<double> y(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i)
        y[i] = std::cos(0.5 * grid.time(i));
    trajectory carrier = trajectory::single(grid, "y", std::move(y));

    const trajectory model = biased_derivative_series(carrier, zero_bias{});
    const trajectory proportional = biased_derivative_series(carrier, constant_bias{0.6});
    const trajectory bubble = biased_derivative_series(carrier, state_bias{0.6});

    std::vector<std::vector<double>> cols;
    cols.reserve(3);
    for (const trajectory* s : {&model, &proportional, &bubble}) {
        auto v = s->values(0);
        cols.emplace_back(v.begin(), v.end());
    }
    trajectory states(model.grid(), {"model", "proportional", "bubble"}, std::move(cols));
    return case_study_result{grid, std::move(carrier), std::move(states), {}};
}

/// Maps a sphere volume to its radius, (3V / 4pi)^(1/3).
inline double sphere_radius(double volume) {
    if (!std::isfinite(volume) || volume < 0.0)
        throw validation_error("sphere radius: volume must be finite and non-negative");
    return std::cbrt(3.0 * volume / (4.0 * std::numbers::pi));
}

/// Accumulates each state's changes over the first full period and fills the
/// sphere-size fields. With the positive_signal mask the integral is taken
/// over samples where the carrier is positive and floored at zero (a sphere
/// cannot have negative volume).
inline case_study_result accumulate_positive_periods(
    case_study_result result, double period,
    accumulation_mask mask = accumulation_mask::positive_changes) {
    if (!std::isfinite(period) || period <= 0.0)
        throw validation_error("accumulation: period must be finite and positive");
    if (period > result.grid.span() + 0.5 * result.grid.dt)
        throw validation_error("accumulation: period " + std::to_string(period) +
                               " exceeds grid span " + std::to_string(result.grid.span()));

    const std::size_t len = result.states.size();
    const auto period_steps = static_cast<std::size_t>(std::llround(period / result.grid.dt));
    const std::size_t last = std::min(len - 1, period_steps);

    result.accumulations.clear();
    for (const std::string& name : result.states.channels()) {
        const trajectory window = slice(extract_channel(result.states, name), 0, last);
        double a = 0.0;
        if (mask == accumulation_mask::positive_changes) {
            a = positive_part_integral(window);
        } else {
            const trajectory signal_window = slice(result.carrier, 0, last);
            a = std::max(0.0, positive_part_integral(window, signal_window));
        }
        result.accumulations.push_back({name, a, a, sphere_radius(a)});
    }
    return result;
}

/// Difference of the bubble and model states (pointwise 0.6*y^2 up to
/// rounding) and the location of its maximum; ties break to the earliest
/// sample.
inline enhancement_result bubble_enhancement(const case_study_result& result) {
    auto bubble = result.states.values("bubble");
    auto model = result.states.values("model");
    std::vector<double> diff(bubble.size());
    for (std::size_t i = 0; i < bubble.size(); ++i)
        diff[i] = bubble[i] - model[i];

    std::size_t peak = 0;
    for (std::size_t i = 1; i < diff.size(); ++i)
        if (diff[i] > diff[peak])
            peak = i;

    const double peak_time = result.states.grid().time(peak);
    const double peak_value = diff[peak];
    trajectory series = trajectory::single(result.states.grid(), "enhancement", std::move(diff));
    return enhancement_result{std::move(series), peak_time, peak_value};
}

} // namespace bider
