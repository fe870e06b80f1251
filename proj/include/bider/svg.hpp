#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "bider/errors.hpp"
#include "bider/trajectory.hpp"

namespace bider {

/// Plot geometry and style. The canvas is fixed at 800x400 units with a
/// 40-unit margin on every side; axes are linear and auto-scaled to the data.
struct svg_options {
    double width = 800.0;
    double height = 400.0;
    double margin = 40.0;
    std::size_t marker_stride = 250; ///< spacing of the circle markers on the last series
};

namespace detail {

inline std::string svg_coord(double v) {
    std::array<char, 32> buf{};
    const int len = std::snprintf(buf.data(), buf.size(), "%.2f", v);
    return std::string(buf.data(), static_cast<std::size_t>(len));
}

inline const char* svg_color(std::size_t series) {
    static constexpr std::array<const char*, 6> palette = {
        "#1f6fb2", "#c23b22", "#2e8b57", "#8a2be2", "#b8860b", "#444444"};
    return palette[series % palette.size()];
}

} // namespace detail

/// Renders every channel of the trajectory as a polyline; the last channel
/// additionally gets circle markers every marker_stride samples. Returns the
/// document text.
inline std::string render_svg(const trajectory& traj, const svg_options& options = {}) {
    if (options.marker_stride == 0)
        throw validation_error("svg: marker stride must be positive");
    const double w = options.width, h = options.height, m = options.margin;

    double lo = traj.at(0, 0), hi = lo;
    for (std::size_t c = 0; c < traj.channel_count(); ++c)
        for (double v : traj.values(c)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (hi == lo) { // flat data: give the axis a nominal extent
        hi += 0.5;
        lo -= 0.5;
    }
    const double t0 = traj.grid().t0;
    const double span = traj.size() > 1 ? traj.grid().span() : 1.0;

    const auto x_of = [&](double t) { return m + (t - t0) / span * (w - 2.0 * m); };
    const auto y_of = [&](double v) { return h - m - (v - lo) / (hi - lo) * (h - 2.0 * m); };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::svg_coord(w) +
           "\" height=\"" + detail::svg_coord(h) + "\" viewBox=\"0 0 " + detail::svg_coord(w) + " " +
           detail::svg_coord(h) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + detail::svg_coord(w) + "\" height=\"" +
           detail::svg_coord(h) + "\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + detail::svg_coord(m) + "\" y=\"" + detail::svg_coord(m) + "\" width=\"" +
           detail::svg_coord(w - 2.0 * m) + "\" height=\"" + detail::svg_coord(h - 2.0 * m) +
           "\" fill=\"none\" stroke=\"#999999\"/>\n";

    for (std::size_t c = 0; c < traj.channel_count(); ++c) {
        auto v = traj.values(c);
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += detail::svg_color(c);
        svg += "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                svg += ' ';
            svg += detail::svg_coord(x_of(traj.grid().time(i))) + "," + detail::svg_coord(y_of(v[i]));
        }
        svg += "\"/>\n";
    }

    {
        const std::size_t c = traj.channel_count() - 1;
        auto v = traj.values(c);
        for (std::size_t i = 0; i < v.size(); i += options.marker_stride) {
            svg += "<circle cx=\"" + detail::svg_coord(x_of(traj.grid().time(i))) + "\" cy=\"" +
                   detail::svg_coord(y_of(v[i])) + "\" r=\"3\" fill=\"none\" stroke=\"";
            svg += detail::svg_color(c);
            svg += "\"/>\n";
        }
    }

    for (std::size_t c = 0; c < traj.channel_count(); ++c) {
        svg += "<text x=\"" + detail::svg_coord(m + 8.0) + "\" y=\"" +
               detail::svg_coord(m + 16.0 + 16.0 * static_cast<double>(c)) + "\" font-size=\"12\" fill=\"";
        svg += detail::svg_color(c);
        svg += "\">" + traj.channels()[c] + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

/// Renders to a file.
inline void render_svg(const trajectory& traj, const std::string& path, const svg_options& options = {}) {
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw io_error("cannot open '" + path + "' for writing");
    file << render_svg(traj, options);
    if (!file.flush())
        throw io_error("write to '" + path + "' failed");
}

} // namespace bider
