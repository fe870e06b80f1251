#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "bider/errors.hpp"
#include "bider/time_grid.hpp"
#include "bider/trajectory.hpp"

namespace bider {

/// Shortest decimal representation that parses back to the same double.
inline std::string format_double(double value) {
    std::array<char, 40> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc())
        throw validation_error("format: value could not be printed");
    return std::string(buf.data(), ptr);
}

/// Serializes a trajectory: header `t,<channels...>`, one row per sample,
/// comma separator, `\n` line ends, shortest-round-trip floats.
inline std::string to_csv(const trajectory& traj) {
    std::string out = "t";
    for (const std::string& name : traj.channels()) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out += format_double(traj.grid().time(i));
        for (std::size_t c = 0; c < traj.channel_count(); ++c) {
            out += ',';
            out += format_double(traj.at(c, i));
        }
        out += '\n';
    }
    return out;
}

inline void write_csv(const trajectory& traj, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw io_error("cannot open '" + path + "' for writing");
    file << to_csv(traj);
    if (!file.flush())
        throw io_error("write to '" + path + "' failed");
}

namespace detail {

inline double parse_field(std::string_view field, std::size_t row, std::size_t column) {
    const std::string where =
        "csv: row " + std::to_string(row + 1) + ", column " + std::to_string(column + 1);
    if (field.empty())
        throw io_error(where + ": blank cell");
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size())
        throw io_error(where + ": malformed number '" + std::string(field) + "'");
    if (!std::isfinite(value))
        throw io_error(where + ": non-finite value '" + std::string(field) + "'");
    return value;
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

/// Recovers the step from the time column. Candidates are the first
/// difference, the mean step, and their nearest float neighbours; the one
/// minimizing the worst reconstruction error t0 + i*d vs t[i] wins. This
/// makes write -> read -> write reproduce the byte-identical file for grids
/// this library has written.
inline double recover_step(const std::vector<double>& t) {
    const double t0 = t.front();
    const double first = t[1] - t[0];
    const double mean = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    std::vector<double> candidates = {
        first,
        std::nextafter(first, std::numeric_limits<double>::infinity()),
        std::nextafter(first, -std::numeric_limits<double>::infinity()),
        mean,
        std::nextafter(mean, std::numeric_limits<double>::infinity()),
        std::nextafter(mean, -std::numeric_limits<double>::infinity()),
    };
    double best = first;
    double best_err = std::numeric_limits<double>::infinity();
    for (double d : candidates) {
        if (!(d > 0.0))
            continue;
        double err = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i)
            err = std::max(err, std::abs(t0 + static_cast<double>(i) * d - t[i]));
        if (err < best_err) {
            best_err = err;
            best = d;
        }
    }
    if (!(best > 0.0) || best_err > 1e-9 * best)
        throw validation_error("csv: time column is not a uniform grid (worst deviation " +
                               format_double(best_err) + ")");
    return best;
}

} // namespace detail

/// Parses CSV text into a trajectory, reconstructing the grid from the time
/// column with a uniformity check.
inline trajectory parse_csv(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (line.ends_with('\r'))
            line.remove_suffix(1);
        if (!line.empty())
            lines.push_back(line);
        start = end + 1;
    }
    if (lines.size() < 3)
        throw io_error("csv: need a header and at least 2 data rows");

    const auto header = detail::split_fields(lines[0]);
    if (header.empty() || header[0] != "t")
        throw io_error("csv: header must start with column 't', got '" + std::string(lines[0]) + "'");
    if (header.size() < 2)
        throw io_error("csv: no value columns in header");
    std::vector<std::string> channels;
    channels.reserve(header.size() - 1);
    for (std::size_t c = 1; c < header.size(); ++c)
        channels.emplace_back(header[c]);

    const std::size_t rows = lines.size() - 1;
    std::vector<double> t(rows);
    std::vector<std::vector<double>> values(channels.size(), std::vector<double>(rows));
    for (std::size_t i = 0; i < rows; ++i) {
        const auto fields = detail::split_fields(lines[i + 1]);
        if (fields.size() != header.size())
            throw io_error("csv: row " + std::to_string(i + 1) + " has " + std::to_string(fields.size()) +
                           " fields, header has " + std::to_string(header.size()));
        t[i] = detail::parse_field(fields[0], i, 0);
        for (std::size_t c = 0; c < channels.size(); ++c)
            values[c][i] = detail::parse_field(fields[c + 1], i, c + 1);
    }

    const double dt = detail::recover_step(t);
    return trajectory(time_grid{t.front(), dt, rows}, std::move(channels), std::move(values));
}

inline trajectory read_csv(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw io_error("cannot open '" + path + "' for reading");
    std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
    if (file.bad())
        throw io_error("read from '" + path + "' failed");
    return parse_csv(text);
}

} // namespace bider
