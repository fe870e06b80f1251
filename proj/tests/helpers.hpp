#pragma once

// Shared test utilities. The numerical oracles here are deliberately
// independent of the library: they integrate, differentiate, and evaluate
// closed forms through their own arithmetic so that agreement with the
// library is evidence, not tautology.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

/// Size of one unit in the last place at the given magnitude.
inline double ulp_of(double scale) {
    const double a = std::abs(scale);
    return std::nextafter(a, std::numeric_limits<double>::infinity()) - a;
}

/// |a - b| within n ulps measured at the magnitude of `scale`. A scale-aware
/// comparison is required wherever an identity suffers cancellation: the
/// intermediate terms, not the result, set the rounding floor.
inline bool within_ulps(double a, double b, int n, double scale) {
    return std::abs(a - b) <= static_cast<double>(n) * ulp_of(scale);
}

// ---------------------------------------------------------------------------
// Quadrature oracle: adaptive Simpson with sign-change bracketing, used to
// confirm positive-part integrals without touching the library's trapezoid.
// ---------------------------------------------------------------------------

namespace detail {

inline double simpson_recurse(const std::function<double(double)>& f, double a, double b,
                              double fa, double fm, double fb, double whole, double tol,
                              int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson integral of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 40);
}

/// Integral of max(f, 0) over [a, b]: sign changes are located by bisection
/// on a fine scan, then each sign-constant piece is integrated adaptively.
inline double positive_part_oracle(const std::function<double(double)>& f, double a, double b) {
    constexpr int scan = 4096;
    std::vector<double> cuts{a};
    double prev_t = a;
    double prev_v = f(a);
    for (int i = 1; i <= scan; ++i) {
        const double t = a + (b - a) * static_cast<double>(i) / scan;
        const double v = f(t);
        if ((prev_v > 0.0) != (v > 0.0)) {
            double lo = prev_t, hi = t;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if ((f(mid) > 0.0) == (prev_v > 0.0))
                    lo = mid;
                else
                    hi = mid;
            }
            cuts.push_back(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_v = v;
    }
    cuts.push_back(b);

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        if (f(mid) > 0.0)
            total += integrate(f, cuts[i], cuts[i + 1]);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Closed forms.
// ---------------------------------------------------------------------------

inline double lag_step_closed(double gain, double time_constant, double t) {
    return gain * (1.0 - std::exp(-t / time_constant));
}

inline double logistic_closed(double sigma, double cap, double n0, double t) {
    return cap / (1.0 + (cap - n0) / n0 * std::exp(-sigma * t));
}

// ---------------------------------------------------------------------------
// Ground-truth series, written with raw loops rather than library calls.
// ---------------------------------------------------------------------------

/// cos(t/2) samples.
inline std::vector<double> carrier_samples(double t0, double dt, std::size_t n) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = std::cos(0.5 * (t0 + static_cast<double>(i) * dt));
    return y;
}

/// The one-step biased difference [y1 - (1 - eps*dt)*y0]/dt applied
/// samplewise, with eps supplied per left sample.
inline std::vector<double> biased_series_raw(const std::vector<double>& y, double dt,
                                             const std::function<double(double)>& eps_of_y) {
    std::vector<double> out(y.size() - 1);
    for (std::size_t i = 0; i + 1 < y.size(); ++i)
        out[i] = (y[i + 1] - (1.0 - eps_of_y(y[i]) * dt) * y[i]) / dt;
    return out;
}

// ---------------------------------------------------------------------------
// Filesystem scratch space.
// ---------------------------------------------------------------------------

/// Self-deleting temporary directory.
class tmp_dir {
  public:
    tmp_dir() {
        std::string tpl = (std::filesystem::temp_directory_path() / "bider_test_XXXXXX").string();
        if (!mkdtemp(tpl.data()))
            throw std::runtime_error("mkdtemp failed");
        path_ = tpl;
    }
    ~tmp_dir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    tmp_dir(const tmp_dir&) = delete;
    tmp_dir& operator=(const tmp_dir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot read " + path);
    return std::string((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
}

inline std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++count;
    return count;
}

} // namespace testutil
