#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <variant>

#include "bider/errors.hpp"
#include "bider/trajectory.hpp"

namespace bider {

// The bias coefficient eps comes in five shapes; the state-dependent ones
// are evaluated against the sample they apply to.
struct zero_bias {};
struct constant_bias {
    double value = 0.0; // eps(t) = value
};
struct state_bias {
    double gain = 0.0; // eps(t) = gain * y(t)
};
struct quadratic_bias {
    double gain = 0.0; // eps(t) = gain * y(t)^2
};
struct tabulated_bias {
    trajectory series; // eps(t_i) = series sample i; grid must match the target
};

using bias_spec = std::variant<zero_bias, constant_bias, state_bias, quadratic_bias, tabulated_bias>;

/// Coefficient value as a function of the current state alone. Tabulated
/// biases have no continuous-time form and are rejected here.
inline double bias_at_state(const bias_spec& bias, double y) {
    if (!std::isfinite(y))
        throw validation_error("bias: state value must be finite");
    return std::visit(
        [y](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, zero_bias>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, constant_bias>) {
                if (!std::isfinite(b.value))
                    throw validation_error("bias: constant coefficient must be finite");
                return b.value;
            } else if constexpr (std::is_same_v<T, state_bias>) {
                if (!std::isfinite(b.gain))
                    throw validation_error("bias: gain must be finite");
                return b.gain * y;
            } else if constexpr (std::is_same_v<T, quadratic_bias>) {
                if (!std::isfinite(b.gain))
                    throw validation_error("bias: gain must be finite");
                return b.gain * (y * y);
            } else {
                throw validation_error("bias: tabulated coefficient has no state-only form");
            }
        },
        bias);
}

/// Coefficient value for sample `index` of a series with state value `y`.
inline double eval_bias(const bias_spec& bias, double y, std::size_t index) {
    if (const auto* tab = std::get_if<tabulated_bias>(&bias)) {
        if (index >= tab->series.size())
            throw validation_error("bias: tabulated index " + std::to_string(index) + " out of range");
        return tab->series.at(0, index);
    }
    return bias_at_state(bias, y);
}

/// Tabulated series must live on the same grid as the data it biases.
inline void check_bias_grid(const bias_spec& bias, const time_grid& grid) {
    if (const auto* tab = std::get_if<tabulated_bias>(&bias)) {
        if (tab->series.channel_count() != 1)
            throw validation_error("bias: tabulated series must have a single channel");
        if (!(tab->series.grid() == grid))
            throw validation_error("bias: tabulated series grid does not match the target grid");
    }
}

} // namespace bider
