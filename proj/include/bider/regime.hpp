#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bider/errors.hpp"
#include "bider/trajectory.hpp"

namespace bider {

/// Taxonomy of bias regimes, keyed by the recovered form of the coefficient.
enum class regime_label { bias_free, overestimating, underestimating, bubble, chaotic };

inline std::string_view to_string(regime_label label) {
    switch (label) {
    case regime_label::bias_free: return "BiasFree";
    case regime_label::overestimating: return "Overestimating";
    case regime_label::underestimating: return "Underestimating";
    case regime_label::bubble: return "Bubble";
    case regime_label::chaotic: return "Chaotic";
    }
    throw validation_error("unknown regime label");
}

/// Classification output: the winning label, its fitted coefficient (0 for
/// BiasFree by convention), the residual sum of every hypothesis, and the
/// sample bookkeeping of the estimator.
struct regime_report {
    regime_label label = regime_label::bias_free;
    double coefficient = 0.0;
    std::map<std::string, double> sse_per_hypothesis; ///< keys: constant, state, quadratic
    std::size_t samples_used = 0;
    std::size_t samples_excluded = 0;
};

/// Tunable thresholds of the estimator.
struct classify_options {
    double near_zero_threshold = 1e-6; ///< |y| below this excludes the sample
    double dead_band = 1e-3;           ///< |c| below this is considered bias-free
    double simplicity_margin = 0.05;   ///< state fits must beat the constant fit by this SSE fraction
};

/// Point estimate of the bias coefficient from an observed pair (y, yodot):
///
///     eps_hat[i] = (yodot[i] - (y[i+1] - y[i]) / dt) / y[i]
///
/// Samples with |y[i]| below the near-zero threshold are flagged invalid
/// rather than interpolated. Returns a two-channel trajectory ("eps_hat",
/// "valid") of length n-1; invalid samples carry eps_hat = 0 and valid = 0.
inline trajectory residual_bias_series(const trajectory& observed, const classify_options& options = {}) {
    if (observed.size() < 2)
        throw validation_error("residual bias: need at least 2 samples");
    auto y = observed.values("y");
    auto yodot = observed.values("yodot");
    const double dt = observed.grid().dt;

    const std::size_t len = observed.size() - 1;
    std::vector<double> eps(len, 0.0);
    std::vector<double> valid(len, 0.0);
    std::size_t used = 0;
    for (std::size_t i = 0; i < len; ++i) {
        if (std::abs(y[i]) < options.near_zero_threshold)
            continue;
        const double fd = (y[i + 1] - y[i]) / dt;
        eps[i] = (yodot[i] - fd) / y[i];
        valid[i] = 1.0;
        ++used;
    }
    if (used == 0)
        throw validation_error("residual bias: every sample was excluded (|y| below threshold)");
    return trajectory(time_grid{observed.grid().t0, dt, len}, {"eps_hat", "valid"},
                      {std::move(eps), std::move(valid)});
}

/// Fits the flagged residual series against the three one-parameter
/// hypotheses (constant, proportional to y, proportional to y^2), each by a
/// scalar normal equation, and selects the winner. The constant hypothesis
/// wins unless a state-dependent fit improves the SSE by more than the
/// simplicity margin. The y series may carry one trailing extra sample
/// (the observed trajectory is one longer than its residual series).
inline regime_report fit_bias_regime(const trajectory& eps_hat, const trajectory& y,
                                     const classify_options& options = {}) {
    auto eps = eps_hat.values("eps_hat");
    auto valid = eps_hat.values("valid");
    if (y.channel_count() != 1)
        throw validation_error("regime fit: y trajectory must have a single channel");
    auto ys = y.values(0);
    if (ys.size() != eps.size() && ys.size() != eps.size() + 1)
        throw validation_error("regime fit: y series is not aligned with the residual series");
    if (y.grid().t0 != eps_hat.grid().t0 || y.grid().dt != eps_hat.grid().dt)
        throw validation_error("regime fit: y grid is not aligned with the residual grid");

    double sum_e = 0.0, sum_y2 = 0.0, sum_y4 = 0.0, sum_ey = 0.0, sum_ey2 = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (valid[i] <= 0.5)
            continue;
        const double yi = ys[i];
        const double y2 = yi * yi;
        sum_e += eps[i];
        sum_ey += eps[i] * yi;
        sum_ey2 += eps[i] * y2;
        sum_y2 += y2;
        sum_y4 += y2 * y2;
        ++used;
    }
    if (used < 8)
        throw validation_error("regime fit: need at least 8 usable samples, got " + std::to_string(used));
    if (sum_y2 <= 0.0 || sum_y4 <= 0.0)
        throw validation_error("regime fit: degenerate regressor (state values vanish)");

    const double c = sum_e / static_cast<double>(used);
    const double k_state = sum_ey / sum_y2;
    const double k_quad = sum_ey2 / sum_y4;

    double sse_c = 0.0, sse_state = 0.0, sse_quad = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (valid[i] <= 0.5)
            continue;
        const double yi = ys[i];
        const double rc = eps[i] - c;
        const double rs = eps[i] - k_state * yi;
        const double rq = eps[i] - k_quad * yi * yi;
        sse_c += rc * rc;
        sse_state += rs * rs;
        sse_quad += rq * rq;
    }

    regime_report report;
    report.sse_per_hypothesis = {{"constant", sse_c}, {"state", sse_state}, {"quadratic", sse_quad}};
    report.samples_used = used;
    report.samples_excluded = eps.size() - used;

    const double best_state_sse = std::min(sse_state, sse_quad);
    if (best_state_sse < (1.0 - options.simplicity_margin) * sse_c) {
        if (sse_state <= sse_quad) {
            report.label = regime_label::bubble;
            report.coefficient = k_state;
        } else {
            report.label = regime_label::chaotic;
            report.coefficient = k_quad;
        }
    } else if (std::abs(c) <= options.dead_band) {
        report.label = regime_label::bias_free;
        report.coefficient = 0.0;
    } else {
        report.label = c > 0.0 ? regime_label::overestimating : regime_label::underestimating;
        report.coefficient = c;
    }
    return report;
}

/// End-to-end classification of an observed (y, yodot) trajectory.
inline regime_report classify(const trajectory& observed, const classify_options& options = {}) {
    const trajectory eps_hat = residual_bias_series(observed, options);
    return fit_bias_regime(eps_hat, extract_channel(observed, "y"), options);
}

} // namespace bider
