#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bider/bias.hpp"
#include "bider/errors.hpp"
#include "bider/models.hpp"
#include "bider/signal.hpp"
#include "bider/time_grid.hpp"
#include "bider/trajectory.hpp"

namespace bider {

/// An ordinary differential system ydot = rhs(t, y, u), used by the
/// fourth-order reference integrator.
struct ode_system {
    std::size_t dimension = 1;
    std::function<std::vector<double>(double t, std::span<const double> state, double u)> rhs;
};

/// One step of the biased-Euler scheme, channel by channel:
///
///     y_next = (1 - eps*dt) * y + dt * rate
///
/// where rate is the biased derivative prescribed by the model. The time
/// argument is carried for symmetry with rate evaluation; the update itself
/// is autonomous.
inline std::vector<double> biased_euler_step(std::span<const double> y, double t, double dt,
                                             std::span<const double> eps_per_channel,
                                             std::span<const double> rate) {
    if (y.size() != eps_per_channel.size() || y.size() != rate.size())
        throw validation_error("biased-Euler step: state, bias, and rate vectors must have equal length");
    if (!std::isfinite(t) || !std::isfinite(dt) || dt <= 0.0)
        throw validation_error("biased-Euler step: dt must be finite and positive");
    std::vector<double> next(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
        next[j] = (1.0 - eps_per_channel[j] * dt) * y[j] + dt * rate[j];
        if (!std::isfinite(next[j]))
            throw validation_error("biased-Euler step: non-finite result (divergence)");
    }
    return next;
}

namespace detail {

inline std::vector<std::string> default_channels(std::size_t dimension) {
    if (dimension == 1)
        return {"y"};
    std::vector<std::string> names(dimension);
    for (std::size_t j = 0; j < dimension; ++j)
        names[j] = "y" + std::to_string(j + 1);
    return names;
}

inline void check_initial_state(std::span<const double> y0, std::size_t dimension, const char* op) {
    if (y0.size() != dimension)
        throw validation_error(std::string(op) + ": initial state has " + std::to_string(y0.size()) +
                               " entries, model has " + std::to_string(dimension) + " channels");
    for (double v : y0)
        if (!std::isfinite(v))
            throw validation_error(std::string(op) + ": initial state must be finite");
}

inline std::vector<double> eval_rate(
    const std::function<std::vector<double>(double, std::span<const double>, double)>& rate,
    double t, std::span<const double> state, double u, std::size_t dimension, std::size_t step,
    const char* op) {
    std::vector<double> r = rate(t, state, u);
    if (r.size() != dimension)
        throw validation_error(std::string(op) + ": rate function returned " + std::to_string(r.size()) +
                               " entries for a " + std::to_string(dimension) + "-channel system");
    for (double v : r)
        if (!std::isfinite(v))
            throw validation_error(std::string(op) + ": non-finite rate at step " + std::to_string(step) +
                                   " (divergence)");
    return r;
}

[[noreturn]] inline void throw_divergence(const char* op, std::size_t step, double t) {
    throw validation_error(std::string(op) + ": state diverged (non-finite) at step " +
                           std::to_string(step) + ", t = " + std::to_string(t));
}

} // namespace detail

/// Simulates a model forward with the biased-Euler scheme. The bias and the
/// rate are both evaluated at the left sample of every step. Sample 0 of the
/// returned trajectory equals y0. Divergence aborts with the step index; no
/// partial trajectory is returned.
inline trajectory simulate_biased(const model_spec& model, const input_signal& input,
                                  const time_grid& grid, std::span<const double> y0) {
    const generic_biased lowered = to_biased(model);
    const std::size_t d = lowered.channels.size();
    detail::check_initial_state(y0, d, "simulate");
    detail::check_signal(input);
    for (const bias_spec& b : lowered.biases)
        check_bias_grid(b, grid);
    if (grid.n < 2)
        throw validation_error("simulate: grid needs at least 2 samples");

    std::vector<std::vector<double>> values(d, std::vector<double>(grid.n));
    std::vector<double> state(y0.begin(), y0.end());
    std::vector<double> eps(d);
    for (std::size_t j = 0; j < d; ++j)
        values[j][0] = state[j];

    for (std::size_t i = 0; i + 1 < grid.n; ++i) {
        const double t = grid.time(i);
        const double u = detail::eval_unchecked(input, t);
        const std::vector<double> rate = detail::eval_rate(lowered.rate, t, state, u, d, i, "simulate");
        for (std::size_t j = 0; j < d; ++j)
            eps[j] = eval_bias(lowered.biases[j], state[j], i);
        for (std::size_t j = 0; j < d; ++j) {
            state[j] = (1.0 - eps[j] * grid.dt) * state[j] + grid.dt * rate[j];
            if (!std::isfinite(state[j]))
                detail::throw_divergence("simulate", i + 1, grid.time(i + 1));
        }
        for (std::size_t j = 0; j < d; ++j)
            values[j][i + 1] = state[j];
    }
    return trajectory(grid, lowered.channels, std::move(values));
}

/// Classical fixed-step fourth-order integration of an ordinary system;
/// serves as the high-accuracy cross-check for the first-order scheme.
inline trajectory simulate_reference(const ode_system& system, const input_signal& input,
                                     const time_grid& grid, std::span<const double> y0) {
    if (system.dimension < 1 || !system.rhs)
        throw validation_error("reference: system needs dimension >= 1 and a rhs function");
    const std::size_t d = system.dimension;
    detail::check_initial_state(y0, d, "reference");
    detail::check_signal(input);
    if (grid.n < 2)
        throw validation_error("reference: grid needs at least 2 samples");

    std::vector<std::vector<double>> values(d, std::vector<double>(grid.n));
    std::vector<double> state(y0.begin(), y0.end());
    for (std::size_t j = 0; j < d; ++j)
        values[j][0] = state[j];

    const double dt = grid.dt;
    std::vector<double> stage(d);
    for (std::size_t i = 0; i + 1 < grid.n; ++i) {
        const double t = grid.time(i);
        const double u0 = detail::eval_unchecked(input, t);
        const double um = detail::eval_unchecked(input, t + 0.5 * dt);
        const double u1 = detail::eval_unchecked(input, t + dt);

        const auto k1 = detail::eval_rate(system.rhs, t, state, u0, d, i, "reference");
        for (std::size_t j = 0; j < d; ++j)
            stage[j] = state[j] + 0.5 * dt * k1[j];
        const auto k2 = detail::eval_rate(system.rhs, t + 0.5 * dt, stage, um, d, i, "reference");
        for (std::size_t j = 0; j < d; ++j)
            stage[j] = state[j] + 0.5 * dt * k2[j];
        const auto k3 = detail::eval_rate(system.rhs, t + 0.5 * dt, stage, um, d, i, "reference");
        for (std::size_t j = 0; j < d; ++j)
            stage[j] = state[j] + dt * k3[j];
        const auto k4 = detail::eval_rate(system.rhs, t + dt, stage, u1, d, i, "reference");

        for (std::size_t j = 0; j < d; ++j) {
            state[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
            if (!std::isfinite(state[j]))
                detail::throw_divergence("reference", i + 1, grid.time(i + 1));
        }
        for (std::size_t j = 0; j < d; ++j)
            values[j][i + 1] = state[j];
    }
    return trajectory(grid, detail::default_channels(d), std::move(values));
}

/// Reconstructs the ordinary form ydot = rate - eps(y)*y of a biased model.
/// Requires state-evaluable biases; a tabulated bias has no meaning at
/// off-grid stage states and is rejected.
inline ode_system ordinary_system(const model_spec& model) {
    auto lowered = std::make_shared<const generic_biased>(to_biased(model));
    for (const bias_spec& b : lowered->biases)
        if (std::holds_alternative<tabulated_bias>(b))
            throw validation_error("ordinary form: tabulated bias cannot be evaluated at intermediate states");
    ode_system sys;
    sys.dimension = lowered->channels.size();
    sys.rhs = [lowered](double t, std::span<const double> state, double u) {
        std::vector<double> r = lowered->rate(t, state, u);
        for (std::size_t j = 0; j < r.size() && j < state.size(); ++j)
            r[j] -= bias_at_state(lowered->biases[j], state[j]) * state[j];
        return r;
    };
    return sys;
}

} // namespace bider
