#include "pcadim/simulation.hpp"

#include "pcadim/baselines.hpp"
#include "pcadim/evidence.hpp"
#include "pcadim/linalg.hpp"

#include <atomic>
#include <bit>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

namespace pcadim {

double snr_to_signal_eigenvalue(double snr, int d, int p) {
    if (d <= 0 || p <= d)
        throw std::domain_error("snr_to_signal_eigenvalue: need 0 < d < p");
    const double alpha = snr * static_cast<double>(p - d) / d;
    if (!(alpha > 1.0))
        throw std::domain_error(
            "snr_to_signal_eigenvalue: signal eigenvalue must exceed the unit "
            "noise; increase snr");
    return alpha;
}

DataMatrix simulate_isotropic(const SimConfig& cfg, RngStream& rng) {
    if (cfg.n < 1 || cfg.p < 2)
        throw std::invalid_argument("simulate_isotropic: need n >= 1, p >= 2");
    const double alpha = snr_to_signal_eigenvalue(cfg.snr, cfg.d_true,
                                                  static_cast<int>(cfg.p));

    const Matrix q = haar_orthogonal(cfg.p, rng);
    const Matrix z = gaussian_matrix(cfg.n, cfg.p, rng);

    Vector scale = Vector::Ones(cfg.p);
    scale.head(cfg.d_true).setConstant(std::sqrt(alpha));

    DataMatrix data;
    data.values.noalias() = (z * scale.asDiagonal()) * q;
    data.centered = false;
    return data;
}

std::string method_name(Method m) {
    switch (m) {
        case Method::normal_gamma: return "normal_gamma";
        case Method::laplace: return "laplace";
        case Method::profile_likelihood: return "profile_likelihood";
        case Method::isotropic_ml: return "isotropic_ml";
    }
    return "unknown";
}

namespace {

// One (cell, replication) unit of work; results land in a slot owned by this
// task so the reduction is order-independent.
struct RepTask {
    std::size_t cell = 0;
    Index n = 0;
    double snr = 0.0;
    int rep = 0;
};

int run_methods_on_dataset(const BenchmarkConfig& config, const RepTask& task,
                           std::vector<int>& chosen) {
    RngStream rng(config.master_seed,
                  mix_stream_id(static_cast<std::uint64_t>(task.n),
                                std::bit_cast<std::uint64_t>(task.snr),
                                static_cast<std::uint64_t>(task.rep)));

    SimConfig sim;
    sim.n = task.n;
    sim.p = config.p;
    sim.d_true = config.d_true;
    sim.snr = task.snr;

    DataMatrix data = simulate_isotropic(sim, rng);
    // The population mean is zero by construction; skipping the empirical
    // recentering keeps the sample covariance at full rank min(n, p).
    data = assume_centered(std::move(data));
    const ModelInputs inputs = make_model_inputs(data);

    const int d_max = static_cast<int>(std::min(data.n(), data.p())) - 1;
    chosen.assign(config.methods.size(), 0);
    int failures = 0;

    for (std::size_t m = 0; m < config.methods.size(); ++m) {
        try {
            switch (config.methods[m]) {
                case Method::normal_gamma: {
                    const Vector phi_grid =
                        default_phi_grid(inputs.eigenvalues, config.phi_count);
                    const DRange range{1, std::max(d_max, 1)};
                    chosen[m] =
                        select_dimension(inputs, phi_grid, range).chosen_d;
                    break;
                }
                case Method::laplace:
                    chosen[m] = laplace_select(inputs.eigenvalues, inputs.n, 1,
                                               d_max)
                                    .chosen_d;
                    break;
                case Method::profile_likelihood:
                    chosen[m] =
                        profile_likelihood_select(inputs.eigenvalues, d_max)
                            .chosen_d;
                    break;
                case Method::isotropic_ml:
                    chosen[m] = isotropic_ml_select(inputs.eigenvalues,
                                                    inputs.n, d_max)
                                    .chosen_d;
                    break;
            }
        } catch (const std::exception& e) {
            std::fprintf(stderr,
                         "benchmark: %s failed at n=%lld snr=%g rep=%d: %s\n",
                         method_name(config.methods[m]).c_str(),
                         static_cast<long long>(task.n), task.snr, task.rep,
                         e.what());
            chosen[m] = 0;  // counted as an underestimate
            ++failures;
        }
    }
    return failures;
}

}  // namespace

BenchmarkTable run_benchmark(const BenchmarkConfig& config) {
    if (config.n_values.empty() || config.snr_values.empty())
        throw std::invalid_argument("run_benchmark: empty n or snr grid");
    if (config.replications < 1)
        throw std::invalid_argument("run_benchmark: replications must be >= 1");
    if (config.methods.empty())
        throw std::invalid_argument("run_benchmark: no methods requested");

    std::vector<RepTask> tasks;
    const std::size_t n_cells =
        config.n_values.size() * config.snr_values.size();
    tasks.reserve(n_cells * static_cast<std::size_t>(config.replications));
    std::size_t cell = 0;
    for (Index n : config.n_values) {
        for (double snr : config.snr_values) {
            for (int r = 0; r < config.replications; ++r)
                tasks.push_back(RepTask{cell, n, snr, r});
            ++cell;
        }
    }

    // chosen[task][method], filled by whichever thread claims the task.
    std::vector<std::vector<int>> chosen(tasks.size());

    unsigned thread_count = config.threads > 0
                                ? static_cast<unsigned>(config.threads)
                                : std::max(1u, std::thread::hardware_concurrency());
    thread_count = std::min<unsigned>(
        thread_count, static_cast<unsigned>(tasks.size()));

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            run_methods_on_dataset(config, tasks[i], chosen[i]);
        }
    };

    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    BenchmarkTable table;
    table.methods = config.methods;
    table.p = config.p;
    table.d_true = config.d_true;
    table.replications = config.replications;
    table.cells.resize(n_cells);
    cell = 0;
    for (Index n : config.n_values) {
        for (double snr : config.snr_values) {
            auto& c = table.cells[cell];
            c.n = n;
            c.snr = snr;
            c.correct.assign(config.methods.size(), 0);
            c.under.assign(config.methods.size(), 0);
            c.over.assign(config.methods.size(), 0);
            ++cell;
        }
    }

    // Sequential reduction in task order: totals do not depend on scheduling.
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        auto& c = table.cells[tasks[i].cell];
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
            const int d = chosen[i][m];
            if (d == config.d_true)
                ++c.correct[m];
            else if (d < config.d_true)
                ++c.under[m];
            else
                ++c.over[m];
        }
    }
    return table;
}

}  // namespace pcadim
