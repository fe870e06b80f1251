#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bider/bias.hpp"
#include "bider/csv.hpp"
#include "bider/errors.hpp"
#include "bider/models.hpp"
#include "bider/signal.hpp"

namespace bider {
namespace detail {

inline double parse_real(std::string_view token, std::string_view what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() ||
        !std::isfinite(value))
        throw usage_error("malformed " + std::string(what) + " '" + std::string(token) + "'");
    return value;
}

inline std::vector<std::string_view> split_on(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(text.substr(start));
            return parts;
        }
        parts.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

/// Splits "head:tail", returning (head, tail); tail is empty when there is
/// no colon.
inline std::pair<std::string_view, std::string_view> split_keyword(std::string_view text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos)
        return {text, {}};
    return {text.substr(0, colon), text.substr(colon + 1)};
}

/// Parses "k1=v1,k2=v2,..." requiring exactly the given keys (any order).
inline std::map<std::string_view, double> parse_pairs(std::string_view text,
                                                      const std::vector<std::string_view>& keys,
                                                      std::string_view what) {
    std::map<std::string_view, double> out;
    for (std::string_view pair : split_on(text, ',')) {
        const std::size_t eq = pair.find('=');
        if (eq == std::string_view::npos)
            throw usage_error(std::string(what) + ": expected key=value, got '" + std::string(pair) + "'");
        const std::string_view key = pair.substr(0, eq);
        bool known = false;
        for (std::string_view k : keys)
            known = known || k == key;
        if (!known)
            throw usage_error(std::string(what) + ": unknown parameter '" + std::string(key) + "'");
        if (out.count(key))
            throw usage_error(std::string(what) + ": duplicate parameter '" + std::string(key) + "'");
        out[key] = parse_real(pair.substr(eq + 1), what);
    }
    for (std::string_view k : keys)
        if (!out.count(k))
            throw usage_error(std::string(what) + ": missing parameter '" + std::string(k) + "'");
    return out;
}

} // namespace detail

/// Grammar: `zero` | `constant:<v>` | `state:<v>` | `quadratic:<v>`.
inline bias_spec parse_bias_spec(std::string_view text) {
    const auto [keyword, rest] = detail::split_keyword(text);
    if (keyword == "zero") {
        if (!rest.empty())
            throw usage_error("bias 'zero' takes no value, got '" + std::string(rest) + "'");
        return zero_bias{};
    }
    if (keyword == "constant")
        return constant_bias{detail::parse_real(rest, "bias value")};
    if (keyword == "state")
        return state_bias{detail::parse_real(rest, "bias value")};
    if (keyword == "quadratic")
        return quadratic_bias{detail::parse_real(rest, "bias value")};
    throw usage_error("unknown bias '" + std::string(keyword) +
                      "' (expected zero, constant:<v>, state:<v>, or quadratic:<v>)");
}

/// Grammar: `step:<amp>` | `harmonic:<amp>,<omega>[,<phase>]` | `const:<v>`
/// | `csv:<path>`. The csv form loads a single-channel file and holds each
/// sample until the next one.
inline input_signal parse_input_signal(std::string_view text) {
    const auto [keyword, rest] = detail::split_keyword(text);
    if (keyword == "step")
        return step_signal{detail::parse_real(rest, "step amplitude"), 0.0};
    if (keyword == "const")
        return constant_signal{detail::parse_real(rest, "constant value")};
    if (keyword == "harmonic") {
        const auto parts = detail::split_on(rest, ',');
        if (parts.size() < 2 || parts.size() > 3)
            throw usage_error("harmonic input needs <amp>,<omega>[,<phase>], got '" + std::string(rest) + "'");
        harmonic_signal sig{detail::parse_real(parts[0], "harmonic amplitude"),
                            detail::parse_real(parts[1], "harmonic frequency"), 0.0};
        if (parts.size() == 3)
            sig.phase = detail::parse_real(parts[2], "harmonic phase");
        return sig;
    }
    if (keyword == "csv") {
        if (rest.empty())
            throw usage_error("csv input needs a path");
        trajectory series = read_csv(std::string(rest));
        if (series.channel_count() != 1)
            throw validation_error("csv input '" + std::string(rest) + "' must have a single value column");
        return tabulated_signal{std::move(series)};
    }
    throw usage_error("unknown input '" + std::string(keyword) +
                      "' (expected step:<amp>, harmonic:<amp>,<omega>[,<phase>], const:<v>, or csv:<path>)");
}

/// Grammar: `lag:K=<v>,T=<v>` | `logistic:sigma=<v>,K=<v>` |
/// `predprey:e1=<v>,e2=<v>,g1=<v>,g2=<v>`.
inline model_spec parse_model_spec(std::string_view text) {
    const auto [keyword, rest] = detail::split_keyword(text);
    if (keyword == "lag") {
        const auto p = detail::parse_pairs(rest, {"K", "T"}, "lag model");
        return first_order_lag_biased(p.at("K"), p.at("T"));
    }
    if (keyword == "logistic") {
        const auto p = detail::parse_pairs(rest, {"sigma", "K"}, "logistic model");
        return logistic_biased(p.at("sigma"), p.at("K"));
    }
    if (keyword == "predprey") {
        const auto p = detail::parse_pairs(rest, {"e1", "e2", "g1", "g2"}, "predator-prey model");
        return predator_prey_biased(p.at("e1"), p.at("e2"), p.at("g1"), p.at("g2"));
    }
    throw usage_error("unknown model '" + std::string(keyword) +
                      "' (expected lag:K=,T=, logistic:sigma=,K=, or predprey:e1=,e2=,g1=,g2=)");
}

} // namespace bider
