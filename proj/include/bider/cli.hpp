#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bider/bubble.hpp"
#include "bider/calculus.hpp"
#include "bider/csv.hpp"
#include "bider/errors.hpp"
#include "bider/integrators.hpp"
#include "bider/models.hpp"
#include "bider/parse.hpp"
#include "bider/regime.hpp"
#include "bider/svg.hpp"
#include "bider/time_grid.hpp"

namespace bider {
namespace detail {

inline std::vector<double> parse_state_list(std::string_view text) {
    std::vector<double> state;
    for (std::string_view part : split_on(text, ','))
        state.push_back(parse_real(part, "initial state entry"));
    return state;
}

inline void run_deriv(const std::string& input, const std::string& bias_text,
                      const std::string& output) {
    const bias_spec bias = parse_bias_spec(bias_text);
    const trajectory traj = read_csv(input);
    if (traj.channel_count() != 1)
        throw validation_error("deriv: input '" + input + "' must have a single value column");
    write_csv(biased_derivative_series(traj, bias), output);
}

inline void run_simulate(const std::string& model_text, const std::string& input_text, double t0,
                         double dt, std::int64_t steps, const std::string& y0_text,
                         const std::string& method, const std::string& output) {
    const model_spec model = parse_model_spec(model_text);
    const std::vector<double> y0 = parse_state_list(y0_text);
    if (y0.size() != dimension(model))
        throw usage_error("--y0 has " + std::to_string(y0.size()) + " entries, model '" + model_text +
                          "' has " + std::to_string(dimension(model)) + " channels");
    const input_signal input = parse_input_signal(input_text);
    const time_grid grid = make_grid(t0, dt, steps + 1);

    trajectory traj = method == "rk4" ? simulate_reference(ordinary_system(model), input, grid, y0)
                                      : simulate_biased(model, input, grid, y0);
    write_csv(traj, output);
}

inline void run_casestudy(double dt, double periods, const std::string& outdir,
                          accumulation_mask mask, std::size_t marker_stride, std::ostream& out) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec)
        throw io_error("cannot create output directory '" + outdir + "': " + ec.message());

    case_study_result result = accumulate_positive_periods(
        case_study_states(case_study_grid(dt, periods)), case_study_period, mask);

    write_csv(result.states, (fs::path(outdir) / "states.csv").string());
    svg_options style;
    style.marker_stride = marker_stride;
    render_svg(result.states, (fs::path(outdir) / "states.svg").string(), style);

    std::string table = "state,A,volume,radius\n";
    for (const accumulation_result& acc : result.accumulations) {
        table += acc.state_name + ',' + format_double(acc.accumulation) + ',' +
                 format_double(acc.sphere_volume) + ',' + format_double(acc.sphere_radius) + '\n';
    }
    const std::string acc_path = (fs::path(outdir) / "accumulation.csv").string();
    std::ofstream file(acc_path, std::ios::binary);
    if (!file)
        throw io_error("cannot open '" + acc_path + "' for writing");
    file << table;
    if (!file.flush())
        throw io_error("write to '" + acc_path + "' failed");

    out << table;
}

inline void run_classify(const std::string& input, double delta, double deadband,
                         std::ostream& out) {
    const trajectory traj = read_csv(input);
    classify_options options;
    options.near_zero_threshold = delta;
    options.dead_band = deadband;
    const regime_report report = classify(traj, options);

    out << "label: " << to_string(report.label) << '\n';
    out << "coefficient: " << format_double(report.coefficient) << '\n';
    for (const char* key : {"constant", "state", "quadratic"})
        out << "sse[" << key << "]: " << format_double(report.sse_per_hypothesis.at(key)) << '\n';
    out << "samples: " << report.samples_used << " used, " << report.samples_excluded
        << " excluded\n";
}

} // namespace detail

/// Dispatches the command line (program name excluded) and reports the
/// outcome through the exit code: 0 success, 1 usage error, 2 I/O error,
/// 3 numeric or validation error.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"biased-derivative toolkit: differentiation, simulation, and regime analysis"};
    app.name("bider");
    app.require_subcommand(1);

    std::string input, output, bias_text, model_text, y0_text, input_text;
    std::string method = "biased-euler";
    std::string outdir = ".";
    std::string mask_text = "deriv";
    double t0 = 0.0;
    double dt = 1e-3;
    double periods = 1.0;
    double delta = 1e-6;
    double deadband = 1e-3;
    std::int64_t steps = 0;
    std::size_t marker_stride = 250;

    CLI::App* deriv = app.add_subcommand("deriv", "differentiate a single-channel CSV under a bias");
    deriv->add_option("--input", input, "input CSV (t,y)")->required();
    deriv->add_option("--bias", bias_text, "zero | constant:<v> | state:<v> | quadratic:<v>")->required();
    deriv->add_option("--output", output, "output CSV (t,yodot)")->required();
    deriv->callback([&] { detail::run_deriv(input, bias_text, output); });

    CLI::App* simulate = app.add_subcommand("simulate", "integrate a model forward from y0");
    simulate->add_option("--model", model_text,
                         "lag:K=,T= | logistic:sigma=,K= | predprey:e1=,e2=,g1=,g2=")->required();
    simulate->add_option("--input", input_text,
                         "step:<amp> | harmonic:<amp>,<omega>[,<phase>] | const:<v> | csv:<path>")->required();
    simulate->add_option("--t0", t0, "start time (default 0)");
    simulate->add_option("--dt", dt, "time step")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--steps", steps, "number of steps")->required()->check(CLI::PositiveNumber);
    simulate->add_option("--y0", y0_text, "initial state, comma-separated")->required();
    simulate->add_option("--output", output, "output CSV")->required();
    simulate->add_option("--method", method, "biased-euler (default) or rk4")
        ->check(CLI::IsMember({"biased-euler", "rk4"}));
    simulate->callback([&] {
        detail::run_simulate(model_text, input_text, t0, dt, steps, y0_text, method, output);
    });

    CLI::App* casestudy = app.add_subcommand("casestudy", "harmonic carrier under three bias states");
    casestudy->add_option("--dt", dt, "time step (default 1e-3)")->check(CLI::PositiveNumber);
    casestudy->add_option("--periods", periods, "carrier periods to simulate (default 1)")
        ->check(CLI::PositiveNumber);
    casestudy->add_option("--outdir", outdir, "output directory (default .)");
    casestudy->add_option("--accumulation-mask", mask_text, "deriv (default) or signal")
        ->check(CLI::IsMember({"deriv", "signal"}));
    casestudy->add_option("--marker-stride", marker_stride, "samples between plot markers")
        ->check(CLI::PositiveNumber);
    casestudy->callback([&] {
        const auto mask = mask_text == "signal" ? accumulation_mask::positive_signal
                                                : accumulation_mask::positive_changes;
        detail::run_casestudy(dt, periods, outdir, mask, marker_stride, out);
    });

    CLI::App* classify_cmd = app.add_subcommand("classify", "identify the bias regime of a (y,yodot) CSV");
    classify_cmd->add_option("--input", input, "input CSV (t,y,yodot)")->required();
    classify_cmd->add_option("--delta", delta, "near-zero exclusion threshold (default 1e-6)")
        ->check(CLI::NonNegativeNumber);
    classify_cmd->add_option("--deadband", deadband, "bias-free dead band (default 1e-3)")
        ->check(CLI::NonNegativeNumber);
    classify_cmd->callback([&] { detail::run_classify(input, delta, deadband, out); });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const io_error& e) {
        err << "i/o error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

} // namespace bider
