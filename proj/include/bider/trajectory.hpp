#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bider/errors.hpp"
#include "bider/time_grid.hpp"

namespace bider {

/// One or more named channels of real samples on a shared uniform grid.
/// Immutable after construction; every channel holds exactly grid.n finite
/// samples and channel names are unique and non-empty.
class trajectory {
public:
    trajectory(time_grid grid, std::vector<std::string> channels,
               std::vector<std::vector<double>> values)
        : grid_(grid), channels_(std::move(channels)), values_(std::move(values)) {
        if (grid_.n < 1)
            throw validation_error("trajectory: grid has no samples");
        if (channels_.empty() || channels_.size() != values_.size())
            throw validation_error("trajectory: channel names and value columns must match");
        for (std::size_t c = 0; c < channels_.size(); ++c) {
            if (channels_[c].empty())
                throw validation_error("trajectory: empty channel name");
            for (std::size_t k = 0; k < c; ++k)
                if (channels_[k] == channels_[c])
                    throw validation_error("trajectory: duplicate channel name '" + channels_[c] + "'");
            if (values_[c].size() != grid_.n)
                throw validation_error("trajectory: channel '" + channels_[c] + "' has " +
                                       std::to_string(values_[c].size()) + " samples, grid has " +
                                       std::to_string(grid_.n));
            for (double v : values_[c])
                if (!std::isfinite(v))
                    throw validation_error("trajectory: non-finite sample in channel '" + channels_[c] + "'");
        }
    }

    static trajectory single(time_grid grid, std::string channel, std::vector<double> values) {
        std::vector<std::string> names;
        names.push_back(std::move(channel));
        std::vector<std::vector<double>> cols;
        cols.push_back(std::move(values));
        return trajectory(grid, std::move(names), std::move(cols));
    }

    const time_grid& grid() const { return grid_; }
    std::size_t size() const { return grid_.n; }
    std::size_t channel_count() const { return channels_.size(); }
    const std::vector<std::string>& channels() const { return channels_; }

    bool has_channel(std::string_view name) const {
        return std::find(channels_.begin(), channels_.end(), name) != channels_.end();
    }

    std::size_t channel_index(std::string_view name) const {
        auto it = std::find(channels_.begin(), channels_.end(), name);
        if (it == channels_.end())
            throw validation_error("trajectory: missing channel '" + std::string(name) + "'");
        return static_cast<std::size_t>(it - channels_.begin());
    }

    std::span<const double> values(std::size_t channel) const {
        if (channel >= values_.size())
            throw validation_error("trajectory: channel index out of range");
        return values_[channel];
    }

    std::span<const double> values(std::string_view name) const { return values_[channel_index(name)]; }

    double at(std::size_t channel, std::size_t i) const { return values(channel)[i]; }

private:
    time_grid grid_;
    std::vector<std::string> channels_;
    std::vector<std::vector<double>> values_;
};

/// Copy of the inclusive sample range [first, last] on a correspondingly
/// shifted grid. Used to restrict quadrature to a sub-window.
inline trajectory slice(const trajectory& traj, std::size_t first, std::size_t last) {
    if (first > last || last >= traj.size())
        throw validation_error("slice: sample range out of bounds");
    time_grid grid{traj.grid().time(first), traj.grid().dt, last - first + 1};
    std::vector<std::vector<double>> cols;
    cols.reserve(traj.channel_count());
    for (std::size_t c = 0; c < traj.channel_count(); ++c) {
        auto src = traj.values(c);
        cols.emplace_back(src.begin() + static_cast<std::ptrdiff_t>(first),
                          src.begin() + static_cast<std::ptrdiff_t>(last + 1));
    }
    return trajectory(grid, traj.channels(), std::move(cols));
}

/// Copy of one named channel as a single-channel trajectory on the same grid.
inline trajectory extract_channel(const trajectory& traj, std::string_view name) {
    auto src = traj.values(name);
    return trajectory::single(traj.grid(), std::string(name),
                              std::vector<double>(src.begin(), src.end()));
}

} // namespace bider
