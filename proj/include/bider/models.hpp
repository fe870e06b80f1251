#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bider/bias.hpp"
#include "bider/errors.hpp"

namespace bider {

/// T*ydot + y = K*u. Biased form: yodot = K*u/T with eps = 1/T.
struct first_order_lag {
    double gain = 1.0;          ///< K
    double time_constant = 1.0; ///< T, must be positive
};

/// Ndot = growth*N*(1 - N/capacity). Biased form: Nodot = -growth*N^2/capacity
/// with eps = -growth.
struct logistic_model {
    double growth = 1.0;    ///< sigma
    double capacity = 1.0;  ///< carrying capacity, must be positive
};

/// Two coupled populations:
///   N1dot =  prey_growth*N1    - predation_rate*N1*N2
///   N2dot = -predator_death*N2 + conversion_rate*N1*N2
/// Biased forms: N1odot = -predation_rate*N1*N2 with eps = -prey_growth,
/// and N2odot = conversion_rate*N1*N2 with eps = predator_death.
struct predator_prey {
    double prey_growth = 1.0;    ///< eps1
    double predator_death = 1.0; ///< eps2
    double predation_rate = 1.0; ///< gamma1
    double conversion_rate = 1.0;///< gamma2
};

/// Fully general biased-form model: one bias per channel plus a rate function
/// returning the biased derivative of every channel at (t, state, u).
struct generic_biased {
    std::vector<std::string> channels;
    std::vector<bias_spec> biases;
    std::function<std::vector<double>(double t, std::span<const double> state, double u)> rate;
};

using model_spec = std::variant<first_order_lag, logistic_model, predator_prey, generic_biased>;

namespace detail {

inline void check_model(const first_order_lag& m) {
    if (!std::isfinite(m.gain) || !std::isfinite(m.time_constant))
        throw validation_error("first-order lag: parameters must be finite");
    if (m.time_constant <= 0.0)
        throw validation_error("first-order lag: time constant must be positive");
}

inline void check_model(const logistic_model& m) {
    if (!std::isfinite(m.growth) || !std::isfinite(m.capacity))
        throw validation_error("logistic model: parameters must be finite");
    if (m.capacity <= 0.0)
        throw validation_error("logistic model: carrying capacity must be positive");
}

inline void check_model(const predator_prey& m) {
    for (double p : {m.prey_growth, m.predator_death, m.predation_rate, m.conversion_rate}) {
        if (!std::isfinite(p) || p <= 0.0)
            throw validation_error("predator-prey model: all four factors must be finite and positive");
    }
}

inline void check_model(const generic_biased& m) {
    if (m.channels.empty())
        throw validation_error("generic biased model: needs at least one channel");
    if (m.biases.size() != m.channels.size())
        throw validation_error("generic biased model: one bias per channel required (" +
                               std::to_string(m.biases.size()) + " biases for " +
                               std::to_string(m.channels.size()) + " channels)");
    if (!m.rate)
        throw validation_error("generic biased model: rate function must be set");
    for (std::size_t i = 0; i < m.channels.size(); ++i) {
        if (m.channels[i].empty())
            throw validation_error("generic biased model: channel names must be non-empty");
        for (std::size_t j = i + 1; j < m.channels.size(); ++j)
            if (m.channels[i] == m.channels[j])
                throw validation_error("generic biased model: duplicate channel name '" + m.channels[i] + "'");
    }
}

} // namespace detail

/// Lowers a first-order lag to generic biased form (eps = 1/T, rate = K*u/T).
inline model_spec first_order_lag_biased(double gain, double time_constant) {
    detail::check_model(first_order_lag{gain, time_constant});
    generic_biased g;
    g.channels = {"y"};
    g.biases = {constant_bias{1.0 / time_constant}};
    g.rate = [gain, time_constant](double, std::span<const double>, double u) {
        return std::vector<double>{gain * u / time_constant};
    };
    return g;
}

/// Lowers the logistic model to generic biased form (eps = -sigma,
/// rate = -sigma*N^2/capacity).
inline model_spec logistic_biased(double growth, double capacity) {
    detail::check_model(logistic_model{growth, capacity});
    generic_biased g;
    g.channels = {"y"};
    g.biases = {constant_bias{-growth}};
    g.rate = [growth, capacity](double, std::span<const double> state, double) {
        return std::vector<double>{-growth * state[0] * state[0] / capacity};
    };
    return g;
}

/// Lowers the predator-prey system to generic biased form (two channels).
inline model_spec predator_prey_biased(double prey_growth, double predator_death,
                                       double predation_rate, double conversion_rate) {
    detail::check_model(predator_prey{prey_growth, predator_death, predation_rate, conversion_rate});
    generic_biased g;
    g.channels = {"y1", "y2"};
    g.biases = {constant_bias{-prey_growth}, constant_bias{predator_death}};
    g.rate = [predation_rate, conversion_rate](double, std::span<const double> state, double) {
        const double coupling = state[0] * state[1];
        return std::vector<double>{-predation_rate * coupling, conversion_rate * coupling};
    };
    return g;
}

/// Lowers any model to its generic biased form. Named catalog entries are
/// rewritten through their *_biased constructor; generic models pass through
/// after validation.
inline generic_biased to_biased(const model_spec& model) {
    return std::visit(
        [](const auto& m) -> generic_biased {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, first_order_lag>) {
                return std::get<generic_biased>(first_order_lag_biased(m.gain, m.time_constant));
            } else if constexpr (std::is_same_v<M, logistic_model>) {
                return std::get<generic_biased>(logistic_biased(m.growth, m.capacity));
            } else if constexpr (std::is_same_v<M, predator_prey>) {
                return std::get<generic_biased>(predator_prey_biased(
                    m.prey_growth, m.predator_death, m.predation_rate, m.conversion_rate));
            } else {
                detail::check_model(m);
                return m;
            }
        },
        model);
}

/// Number of state channels of a model.
inline std::size_t dimension(const model_spec& model) {
    return std::visit(
        [](const auto& m) -> std::size_t {
            using M = std::decay_t<decltype(m)>;
            detail::check_model(m);
            if constexpr (std::is_same_v<M, predator_prey>) {
                return 2;
            } else if constexpr (std::is_same_v<M, generic_biased>) {
                return m.channels.size();
            } else {
                return 1;
            }
        },
        model);
}

/// Closed-form unit-step response of the first-order lag: K*(1 - e^{-t/T}).
inline double first_order_step_response(double gain, double time_constant, double t) {
    detail::check_model(first_order_lag{gain, time_constant});
    if (!std::isfinite(t) || t < 0.0)
        throw validation_error("step response: time must be finite and non-negative");
    return gain * (1.0 - std::exp(-t / time_constant));
}

/// Conserved quantity of the predator-prey system:
/// V = g2*N1 - e2*ln(N1) + g1*N2 - e1*ln(N2). Constant along exact orbits.
inline double lotka_volterra_invariant(double prey_growth, double predator_death,
                                       double predation_rate, double conversion_rate,
                                       double n1, double n2) {
    detail::check_model(predator_prey{prey_growth, predator_death, predation_rate, conversion_rate});
    if (!(n1 > 0.0) || !(n2 > 0.0) || !std::isfinite(n1) || !std::isfinite(n2))
        throw validation_error("invariant: populations must be positive and finite");
    return conversion_rate * n1 - predator_death * std::log(n1) +
           predation_rate * n2 - prey_growth * std::log(n2);
}

} // namespace bider
