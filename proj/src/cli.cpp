#include "pcadim/cli.hpp"

#include "pcadim/baselines.hpp"
#include "pcadim/evidence.hpp"
#include "pcadim/io.hpp"
#include "pcadim/linalg.hpp"
#include "pcadim/simulation.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace pcadim {

namespace {

// Options shared by every data-consuming subcommand.
struct DataOpts {
    std::string input = "-";
    bool no_header = false;
    bool no_center = false;
    std::string out = "-";
};

void add_data_opts(CLI::App* cmd, DataOpts& opts) {
    cmd->add_option("-i,--input", opts.input,
                    "Input CSV path ('-' for stdin)");
    cmd->add_flag("--no-header", opts.no_header,
                  "Treat the first line as data, not a header");
    cmd->add_flag("--no-center", opts.no_center,
                  "Assume the data is already mean-zero; skip centering");
    cmd->add_option("-o,--out", opts.out, "Output path ('-' for stdout)");
}

DataMatrix load_data(const DataOpts& opts, std::istream& in) {
    DataMatrix data = opts.input == "-" ? read_csv(in, !opts.no_header)
                                        : read_csv(opts.input, !opts.no_header);
    return opts.no_center ? assume_centered(std::move(data)) : center(data);
}

// Writes through `fn` to stdout or to a fresh file.
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fn) {
    if (path == "-") {
        fn(out);
        return;
    }
    std::ofstream file(path);
    if (!file)
        throw data_error(data_error::code::unreadable_file,
                         "cannot open '" + path + "' for writing");
    fn(file);
}

SigmaConvention parse_convention(const std::string& name) {
    return name == "mean-eigenvalue" ? SigmaConvention::mean_eigenvalue
                                     : SigmaConvention::variance;
}

Vector explicit_phi_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi >= lo) || count < 1)
        throw std::invalid_argument(
            "phi grid: need 0 < phi-min <= phi-max and phi-count >= 1");
    Vector grid(count);
    if (count == 1) {
        grid(0) = lo;
        return grid;
    }
    const double step = (std::log(hi) - std::log(lo)) / (count - 1);
    for (int i = 0; i < count; ++i) grid(i) = std::exp(std::log(lo) + i * step);
    return grid;
}

DRange resolve_d_range(Index n, Index p, int dmin, int dmax) {
    DRange range = default_d_range(n, p);
    if (dmin > 0) range.lo = dmin;
    if (dmax > 0) range.hi = dmax;
    return range;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
    std::vector<Method> methods;
    for (const auto& name : names) {
        if (name == "normal_gamma")
            methods.push_back(Method::normal_gamma);
        else if (name == "laplace")
            methods.push_back(Method::laplace);
        else if (name == "profile_likelihood")
            methods.push_back(Method::profile_likelihood);
        else if (name == "isotropic_ml")
            methods.push_back(Method::isotropic_ml);
        else
            throw std::invalid_argument("unknown method '" + name + "'");
    }
    return methods;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in,
            std::ostream& out, std::ostream& err) {
    CLI::App app{"Bayesian intrinsic-dimension selection for PCA"};
    app.require_subcommand(1);
    app.set_config("--config");

    // --- select ---------------------------------------------------------
    auto* select = app.add_subcommand(
        "select", "Pick the dimension by exact marginal likelihood");
    DataOpts sel_data;
    add_data_opts(select, sel_data);
    double sel_phi_min = 0.0, sel_phi_max = 0.0;
    int sel_phi_count = 40;
    int sel_dmin = 0, sel_dmax = 0;
    std::string sel_conv = "variance";
    std::string sel_curves;
    select->add_option("--phi-min", sel_phi_min, "Smallest phi candidate");
    select->add_option("--phi-max", sel_phi_max, "Largest phi candidate");
    select->add_option("--phi-count", sel_phi_count,
                       "Number of log-spaced phi candidates");
    select->add_option("--dmin", sel_dmin, "Smallest candidate dimension");
    select->add_option("--dmax", sel_dmax, "Largest candidate dimension");
    select
        ->add_option("--sigma-convention", sel_conv,
                     "Noise plug-in reading used for the gamma shape")
        ->check(CLI::IsMember({"variance", "mean-eigenvalue"}));
    select->add_option("--curves", sel_curves,
                       "Also write every phi candidate's curve as CSV here");

    // --- baselines ------------------------------------------------------
    auto* baselines = app.add_subcommand(
        "baselines", "Run the reference selectors on the same data");
    DataOpts base_data;
    add_data_opts(baselines, base_data);
    int base_dmin = 0, base_dmax = 0;
    baselines->add_option("--dmin", base_dmin, "Smallest candidate dimension");
    baselines->add_option("--dmax", base_dmax, "Largest candidate dimension");

    // --- simulate -------------------------------------------------------
    auto* simulate =
        app.add_subcommand("simulate", "Draw a spiked-covariance dataset");
    Index sim_n = 100, sim_p = 50;
    int sim_d = 20;
    double sim_snr = 20.0;
    std::uint64_t sim_seed = 0, sim_stream = 0;
    std::string sim_out = "-";
    simulate->add_option("--n", sim_n, "Observations");
    simulate->add_option("--p", sim_p, "Variables");
    simulate->add_option("--d", sim_d, "True intrinsic dimension");
    simulate->add_option("--snr", sim_snr, "Signal-to-noise ratio");
    simulate->add_option("--seed", sim_seed, "Master seed");
    simulate->add_option("--stream", sim_stream, "Stream id under the seed");
    simulate->add_option("-o,--out", sim_out, "Output path ('-' for stdout)");

    // --- benchmark ------------------------------------------------------
    auto* benchmark = app.add_subcommand(
        "benchmark", "Accuracy table over an (n, snr) grid");
    std::vector<Index> bench_n = {100};
    std::vector<double> bench_snr = {20.0};
    Index bench_p = 50;
    int bench_d = 20, bench_reps = 50, bench_threads = 0, bench_phi_count = 40;
    std::uint64_t bench_seed = 0;
    std::vector<std::string> bench_methods = {
        "normal_gamma", "laplace", "profile_likelihood", "isotropic_ml"};
    std::string bench_out = "-";
    benchmark->add_option("--n", bench_n, "Observation counts")
        ->delimiter(',');
    benchmark->add_option("--snr", bench_snr, "Signal-to-noise ratios")
        ->delimiter(',');
    benchmark->add_option("--p", bench_p, "Variables");
    benchmark->add_option("--d", bench_d, "True intrinsic dimension");
    benchmark->add_option("--reps", bench_reps, "Replications per cell");
    benchmark->add_option("--seed", bench_seed, "Master seed");
    benchmark->add_option("--methods", bench_methods, "Selectors to run")
        ->delimiter(',');
    benchmark->add_option("--threads", bench_threads,
                          "Worker threads (0 = hardware)");
    benchmark->add_option("--phi-count", bench_phi_count,
                          "Phi candidates for the normal-gamma selector");
    benchmark->add_option("-o,--out", bench_out,
                          "Output path ('-' for stdout)");

    // --- curve ----------------------------------------------------------
    auto* curve = app.add_subcommand(
        "curve", "Log-evidence versus dimension at an explicit phi");
    DataOpts curve_data;
    add_data_opts(curve, curve_data);
    double curve_phi = 0.0;
    int curve_dmin = 0, curve_dmax = 0;
    std::string curve_conv = "variance";
    curve->add_option("--phi", curve_phi, "Prior precision phi")->required();
    curve->add_option("--dmin", curve_dmin, "Smallest candidate dimension");
    curve->add_option("--dmax", curve_dmax, "Largest candidate dimension");
    curve
        ->add_option("--sigma-convention", curve_conv,
                     "Noise plug-in reading used for the gamma shape")
        ->check(CLI::IsMember({"variance", "mean-eigenvalue"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        if (select->parsed()) {
            const DataMatrix data = load_data(sel_data, in);
            const ModelInputs inputs = make_model_inputs(data);
            const Vector phi_grid =
                sel_phi_min > 0.0
                    ? explicit_phi_grid(sel_phi_min,
                                        sel_phi_max > 0.0 ? sel_phi_max
                                                          : sel_phi_min,
                                        sel_phi_count)
                    : default_phi_grid(inputs.eigenvalues, sel_phi_count);
            const DRange range =
                resolve_d_range(inputs.n, inputs.p, sel_dmin, sel_dmax);
            const SigmaConvention conv = parse_convention(sel_conv);

            const SelectionReport report =
                select_dimension(inputs, phi_grid, range, conv);
            if (!sel_curves.empty()) {
                const HeuristicPhiResult sweep =
                    heuristic_phi(inputs, phi_grid, range, conv);
                emit(sel_curves, out,
                     [&](std::ostream& os) { write_curves_csv(os, sweep.curves); });
            }
            emit(sel_data.out, out,
                 [&](std::ostream& os) { write_report(os, report); });
            for (const auto& w : report.warnings) err << "warning: " << w << '\n';
        } else if (baselines->parsed()) {
            const DataMatrix data = load_data(base_data, in);
            const ModelInputs inputs = make_model_inputs(data);
            const DRange range =
                resolve_d_range(inputs.n, inputs.p, base_dmin, base_dmax);
            const BaselineResult lap =
                laplace_select(inputs.eigenvalues, inputs.n, range.lo, range.hi);
            const BaselineResult pl =
                profile_likelihood_select(inputs.eigenvalues, range.hi);
            const BaselineResult iso =
                isotropic_ml_select(inputs.eigenvalues, inputs.n, range.hi);
            emit(base_data.out, out, [&](std::ostream& os) {
                os << "method,chosen_d\n";
                os << "laplace," << lap.chosen_d << '\n';
                os << "profile_likelihood," << pl.chosen_d << '\n';
                os << "isotropic_ml," << iso.chosen_d << '\n';
            });
        } else if (simulate->parsed()) {
            SimConfig cfg;
            cfg.n = sim_n;
            cfg.p = sim_p;
            cfg.d_true = sim_d;
            cfg.snr = sim_snr;
            RngStream rng(sim_seed, sim_stream);
            const DataMatrix data = simulate_isotropic(cfg, rng);
            emit(sim_out, out,
                 [&](std::ostream& os) { write_matrix_csv(os, data.values); });
        } else if (benchmark->parsed()) {
            BenchmarkConfig cfg;
            cfg.n_values = bench_n;
            cfg.snr_values = bench_snr;
            cfg.p = bench_p;
            cfg.d_true = bench_d;
            cfg.replications = bench_reps;
            cfg.methods = parse_methods(bench_methods);
            cfg.master_seed = bench_seed;
            cfg.threads = bench_threads;
            cfg.phi_count = bench_phi_count;
            const BenchmarkTable table = run_benchmark(cfg);
            emit(bench_out, out,
                 [&](std::ostream& os) { write_benchmark_csv(os, table); });
        } else if (curve->parsed()) {
            const DataMatrix data = load_data(curve_data, in);
            const ModelInputs inputs = make_model_inputs(data);
            const DRange range =
                resolve_d_range(inputs.n, inputs.p, curve_dmin, curve_dmax);
            const EvidenceCurve ec = evidence_curve(
                inputs, curve_phi, range, parse_convention(curve_conv));
            emit(curve_data.out, out,
                 [&](std::ostream& os) { write_curve_csv(os, ec); });
        }
    } catch (const data_error& e) {
        err << "data error: " << e.what();
        if (e.row() > 0) err << " (row " << e.row() << ")";
        err << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

int run_cli(int argc, const char* const* argv) {
    return run_cli(argc, argv, std::cin, std::cout, std::cerr);
}

}  // namespace pcadim
