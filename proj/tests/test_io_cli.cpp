#include "pcadim/cli.hpp"
#include "pcadim/io.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using namespace pcadim;

namespace {

int cli(const std::vector<std::string>& args, const std::string& stdin_text,
        std::string* stdout_text = nullptr, std::string* stderr_text = nullptr) {
    std::vector<const char*> argv = {"pcadim"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), in,
                             out, err);
    if (stdout_text) *stdout_text = out.str();
    if (stderr_text) *stderr_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("read_csv parses a plain numeric body") {
    std::istringstream in("1,2\n3,4\n");
    const DataMatrix m = read_csv(in, false);
    REQUIRE(m.n() == 2);
    REQUIRE(m.p() == 2);
    CHECK(m.values(0, 0) == 1.0);
    CHECK(m.values(0, 1) == 2.0);
    CHECK(m.values(1, 0) == 3.0);
    CHECK(m.values(1, 1) == 4.0);
    CHECK_FALSE(m.centered);
}

TEST_CASE("read_csv skips a header when asked") {
    std::istringstream in("x1,x2\r\n1.5,-2e3\n");
    const DataMatrix m = read_csv(in, true);
    REQUIRE(m.n() == 1);
    CHECK(m.values(0, 0) == 1.5);
    CHECK(m.values(0, 1) == -2000.0);
}

TEST_CASE("read_csv reports malformed input precisely") {
    std::istringstream ragged("1,2\n3\n");
    try {
        read_csv(ragged, false);
        FAIL("expected ragged-row error");
    } catch (const data_error& e) {
        CHECK(e.error_code() == data_error::code::ragged_row);
        CHECK(e.row() == 2);
    }

    std::istringstream bad("1,2\n3,oops\n");
    try {
        read_csv(bad, false);
        FAIL("expected bad-cell error");
    } catch (const data_error& e) {
        CHECK(e.error_code() == data_error::code::bad_cell);
        CHECK(e.row() == 2);
        CHECK(e.column() == 2);
    }

    std::istringstream empty("");
    try {
        read_csv(empty, false);
        FAIL("expected empty-file error");
    } catch (const data_error& e) {
        CHECK(e.error_code() == data_error::code::empty_file);
    }

    CHECK_THROWS_AS(read_csv(std::string("/nonexistent/nope.csv"), false),
                    data_error);
}

TEST_CASE("reports round-trip through JSON byte-identically") {
    SelectionReport report;
    report.chosen_d = 3;
    report.phi_star = 0.037;
    report.curve.phi = 0.037;
    report.curve.d_min = 1;
    report.curve.log_evidence.resize(4);
    report.curve.log_evidence << -101.25, -97.5, -96.125, -99.0;
    report.curve.a_values.resize(4);
    report.curve.a_values << 0.5, 0.25, 0.125, 0.0625;
    report.posterior.resize(4);
    report.posterior << 0.005, 0.195, 0.7, 0.1;
    report.warnings = {"something \"quoted\" here"};

    std::ostringstream first;
    write_report(first, report);

    std::istringstream back(first.str());
    const SelectionReport parsed = read_report(back);
    CHECK(parsed.chosen_d == report.chosen_d);
    CHECK(parsed.phi_star == report.phi_star);
    CHECK(parsed.curve.d_min == report.curve.d_min);
    CHECK((parsed.curve.log_evidence - report.curve.log_evidence)
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK((parsed.posterior - report.posterior).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(parsed.warnings.size() == 1);
    CHECK(parsed.warnings[0] == report.warnings[0]);

    std::ostringstream second;
    write_report(second, parsed);
    CHECK(first.str() == second.str());
}

TEST_CASE("format_double survives a round trip at full precision") {
    for (double v : {0.1, -3.1447298858494002, 1e-300, 7.25, 123456789.123}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("matrix CSV emission is RFC-4180 with an x1..xp header") {
    Matrix m(1, 3);
    m << 0.5, -1.0, 2.25;
    std::ostringstream out;
    write_matrix_csv(out, m);
    CHECK(out.str() == "x1,x2,x3\n0.5,-1,2.25\n");
}

TEST_CASE("cli: help exits zero, unknown flags exit one") {
    std::string out, err;
    CHECK(cli({"--help"}, "", &out, &err) == 0);
    CHECK(out.find("select") != std::string::npos);

    CHECK(cli({"select", "--definitely-not-a-flag"}, "", &out, &err) == 1);
    CHECK_FALSE(err.empty());

    CHECK(cli({}, "", &out, &err) == 1);  // a subcommand is required
}

TEST_CASE("cli: malformed data exits two, impossible config exits three") {
    std::string out, err;
    CHECK(cli({"select", "--no-header"}, "1,2\n3\n", &out, &err) == 2);
    CHECK(err.find("data error") != std::string::npos);

    // Numeric/config failure: a d range the data cannot support.
    const int code = cli({"curve", "--phi", "1.0", "--dmin", "40", "--dmax",
                          "45"},
                         "1,2,3\n2,1,0.5\n0.2,0.4,1\n4,2,1\n", &out, &err);
    CHECK(code == 3);
}

TEST_CASE("cli: simulate pipes into select") {
    std::string sim_csv;
    REQUIRE(cli({"simulate", "--n", "60", "--p", "12", "--d", "3", "--snr",
                 "15", "--seed", "42"},
                "", &sim_csv) == 0);
    CHECK(sim_csv.rfind("x1,x2,", 0) == 0);

    std::string report_json, err;
    REQUIRE(cli({"select", "--no-center", "--phi-count", "15"}, sim_csv,
                &report_json, &err) == 0);
    CHECK(report_json.find("\"chosen_d\": 3") != std::string::npos);

    // Same bytes again: the whole pipeline is deterministic.
    std::string report_again;
    cli({"select", "--no-center", "--phi-count", "15"}, sim_csv,
        &report_again);
    CHECK(report_json == report_again);
}

TEST_CASE("cli: baselines emits one row per method") {
    std::string sim_csv;
    REQUIRE(cli({"simulate", "--n", "50", "--p", "8", "--d", "2", "--snr",
                 "12", "--seed", "5"},
                "", &sim_csv) == 0);
    std::string out;
    REQUIRE(cli({"baselines", "--no-center"}, sim_csv, &out) == 0);
    CHECK(out.find("method,chosen_d\n") == 0);
    CHECK(out.find("laplace,") != std::string::npos);
    CHECK(out.find("profile_likelihood,") != std::string::npos);
    CHECK(out.find("isotropic_ml,") != std::string::npos);
}

TEST_CASE("cli: curve emits the evidence profile") {
    std::string sim_csv;
    REQUIRE(cli({"simulate", "--n", "40", "--p", "6", "--d", "2", "--snr",
                 "10", "--seed", "3"},
                "", &sim_csv) == 0);
    std::string out;
    REQUIRE(cli({"curve", "--no-center", "--phi", "0.8"}, sim_csv, &out) == 0);
    CHECK(out.find("d,log_evidence,a\n") == 0);
    // One line per candidate dimension 1..5 plus the header.
    int lines = 0;
    for (char c : out)
        if (c == '\n') ++lines;
    CHECK(lines == 6);
}

TEST_CASE("cli: benchmark is byte-identical across runs and thread counts") {
    const std::vector<std::string> base = {
        "benchmark", "--n",    "15,25", "--snr",  "9",  "--p",
        "8",         "--d",    "2",     "--reps", "3",  "--seed",
        "77",        "--phi-count", "8"};
    std::string first;
    auto with_threads = [&](const char* t) {
        std::vector<std::string> args = base;
        args.push_back("--threads");
        args.push_back(t);
        std::string out;
        REQUIRE(cli(args, "", &out) == 0);
        return out;
    };
    first = with_threads("1");
    CHECK(first.find("method,n,snr,replications,accuracy,under,over\n") == 0);
    CHECK(with_threads("2") == first);
    CHECK(with_threads("8") == first);
    CHECK(with_threads("1") == first);
}
