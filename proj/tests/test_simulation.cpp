#include "pcadim/simulation.hpp"

#include "pcadim/io.hpp"
#include "pcadim/linalg.hpp"

#include "support/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace pcadim;

TEST_CASE("snr maps to the documented signal eigenvalue") {
    CHECK(snr_to_signal_eigenvalue(20.0, 20, 50) == doctest::Approx(30.0));
    CHECK(snr_to_signal_eigenvalue(1.5, 20, 50) == doctest::Approx(2.25));
    // alpha <= 1 would bury the signal under the unit noise.
    CHECK_THROWS_AS(snr_to_signal_eigenvalue(0.5, 25, 50), std::domain_error);
    CHECK_THROWS_AS(snr_to_signal_eigenvalue(2.0, 5, 5), std::domain_error);
    CHECK_THROWS_AS(snr_to_signal_eigenvalue(2.0, 0, 5), std::domain_error);
}

TEST_CASE("simulated covariance matches the planted model") {
    SimConfig cfg;
    cfg.n = 20000;
    cfg.p = 6;
    cfg.d_true = 2;
    cfg.snr = 6.0;
    const double alpha = snr_to_signal_eigenvalue(cfg.snr, cfg.d_true,
                                                  static_cast<int>(cfg.p));

    // Replay the documented draw order to recover the planted rotation.
    RngStream replay(314, 1);
    const Matrix q = haar_orthogonal(cfg.p, replay);

    RngStream rng(314, 1);
    const DataMatrix data = simulate_isotropic(cfg, rng);
    CHECK_FALSE(data.centered);
    REQUIRE(data.n() == cfg.n);
    REQUIRE(data.p() == cfg.p);

    Vector diag = Vector::Ones(cfg.p);
    diag.head(cfg.d_true).setConstant(alpha);
    const Matrix want = q.transpose() * diag.asDiagonal() * q;
    const Matrix got = covariance_matrix(data.values);

    for (Index j = 0; j < cfg.p; ++j) {
        for (Index k = 0; k < cfg.p; ++k) {
            const double se = std::sqrt(
                (want(j, j) * want(k, k) + want(j, k) * want(j, k)) / cfg.n);
            CHECK(std::fabs(got(j, k) - want(j, k)) < 5.0 * se);
        }
    }
}

TEST_CASE("simulation replays bit-for-bit from its stream") {
    SimConfig cfg;
    cfg.n = 25;
    cfg.p = 10;
    cfg.d_true = 3;
    cfg.snr = 5.0;
    RngStream r1(99, 4), r2(99, 4), r3(99, 5);
    const DataMatrix a = simulate_isotropic(cfg, r1);
    const DataMatrix b = simulate_isotropic(cfg, r2);
    const DataMatrix c = simulate_isotropic(cfg, r3);
    CHECK(teststat::matrix_checksum(a.values) ==
          teststat::matrix_checksum(b.values));
    CHECK(teststat::matrix_checksum(a.values) !=
          teststat::matrix_checksum(c.values));
}

TEST_CASE("benchmark counts partition the replications") {
    BenchmarkConfig cfg;
    cfg.n_values = {30};
    cfg.snr_values = {10.0};
    cfg.p = 12;
    cfg.d_true = 3;
    cfg.replications = 6;
    cfg.master_seed = 7;
    cfg.threads = 1;
    cfg.phi_count = 12;

    const BenchmarkTable table = run_benchmark(cfg);
    REQUIRE(table.cells.size() == 1);
    for (std::size_t m = 0; m < table.methods.size(); ++m) {
        const auto& cell = table.cells[0];
        CHECK(cell.correct[m] + cell.under[m] + cell.over[m] ==
              cfg.replications);
        CHECK(table.accuracy(0, m) ==
              doctest::Approx(100.0 * cell.correct[m] / 6.0));
    }
}

TEST_CASE("benchmark output is identical across thread counts") {
    BenchmarkConfig cfg;
    cfg.n_values = {20, 35};
    cfg.snr_values = {8.0};
    cfg.p = 10;
    cfg.d_true = 2;
    cfg.replications = 4;
    cfg.master_seed = 11;
    cfg.phi_count = 10;

    std::string csv[3];
    int variant = 0;
    for (int threads : {1, 3, 8}) {
        cfg.threads = threads;
        std::ostringstream out;
        write_benchmark_csv(out, run_benchmark(cfg));
        csv[variant++] = out.str();
    }
    CHECK(csv[0] == csv[1]);
    CHECK(csv[0] == csv[2]);
    CHECK(csv[0].find("method,n,snr,replications,accuracy,under,over\n") == 0);
}

TEST_CASE("accuracy does not degrade when the signal strengthens") {
    BenchmarkConfig cfg;
    cfg.n_values = {60};
    cfg.snr_values = {1.15, 12.0};
    cfg.p = 12;
    cfg.d_true = 3;
    cfg.replications = 10;
    cfg.methods = {Method::normal_gamma};
    cfg.master_seed = 13;
    cfg.threads = 1;
    cfg.phi_count = 12;

    const BenchmarkTable table = run_benchmark(cfg);
    REQUIRE(table.cells.size() == 2);
    CHECK(table.cells[1].correct[0] >= table.cells[0].correct[0]);
    CHECK(table.cells[1].correct[0] >= 8);  // strong signal, easy n
}

TEST_CASE("method failures are recorded as underestimates") {
    // n = 1 leaves no admissible candidate range for the baselines; every
    // replication must be counted, not dropped.
    BenchmarkConfig cfg;
    cfg.n_values = {1};
    cfg.snr_values = {20.0};
    cfg.p = 6;
    cfg.d_true = 3;
    cfg.replications = 3;
    cfg.methods = {Method::laplace, Method::profile_likelihood};
    cfg.master_seed = 17;
    cfg.threads = 1;

    const BenchmarkTable table = run_benchmark(cfg);
    for (std::size_t m = 0; m < 2; ++m) {
        CHECK(table.cells[0].under[m] == 3);
        CHECK(table.cells[0].correct[m] == 0);
        CHECK(table.cells[0].over[m] == 0);
    }
}

TEST_CASE("benchmark validates its configuration") {
    BenchmarkConfig cfg;
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);  // empty grids
    cfg.n_values = {20};
    cfg.snr_values = {5.0};
    cfg.replications = 0;
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
    cfg.replications = 1;
    cfg.methods.clear();
    CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
}

TEST_CASE("method names are stable identifiers") {
    CHECK(method_name(Method::normal_gamma) == "normal_gamma");
    CHECK(method_name(Method::laplace) == "laplace");
    CHECK(method_name(Method::profile_likelihood) == "profile_likelihood");
    CHECK(method_name(Method::isotropic_ml) == "isotropic_ml");
}
