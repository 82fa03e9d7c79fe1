#include "pcadim/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace pcadim {

namespace {

bool parse_cell(const std::string& text, double& out) {
    const char* first = text.data();
    const char* last = first + text.size();
    // Tolerate surrounding spaces but nothing else.
    while (first < last && (*first == ' ' || *first == '\t')) ++first;
    while (last > first && (last[-1] == ' ' || last[-1] == '\t')) --last;
    if (first == last) return false;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last;
}

void split_line(const std::string& line, std::vector<std::string>& cells) {
    cells.clear();
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            cells.push_back(line.substr(start));
            return;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace

DataMatrix read_csv(std::istream& in, bool has_header) {
    std::vector<std::vector<double>> rows;
    std::vector<std::string> cells;
    std::string line;
    Index width = -1;
    Index line_no = 0;  // 1-based, counting the header if present

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1 && has_header) continue;
        if (line.empty()) continue;

        split_line(line, cells);
        if (width < 0) width = static_cast<Index>(cells.size());
        if (static_cast<Index>(cells.size()) != width)
            throw data_error(data_error::code::ragged_row,
                             "row has " + std::to_string(cells.size()) +
                                 " cells, expected " + std::to_string(width),
                             line_no, static_cast<Index>(cells.size()));

        rows.emplace_back(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!parse_cell(cells[c], rows.back()[c]))
                throw data_error(data_error::code::bad_cell,
                                 "cannot parse '" + cells[c] + "' as a number",
                                 line_no, static_cast<Index>(c) + 1);
        }
    }

    if (rows.empty())
        throw data_error(data_error::code::empty_file,
                         "no data rows in input", 0, 0);

    DataMatrix data;
    data.values.resize(static_cast<Index>(rows.size()), width);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (Index c = 0; c < width; ++c)
            data.values(static_cast<Index>(r), c) = rows[r][c];
    data.centered = false;
    return data;
}

DataMatrix read_csv(const std::string& path, bool has_header) {
    std::ifstream in(path);
    if (!in)
        throw data_error(data_error::code::unreadable_file,
                         "cannot open '" + path + "'", 0, 0);
    return read_csv(in, has_header);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_matrix_csv(std::ostream& out, const Matrix& values) {
    for (Index c = 0; c < values.cols(); ++c)
        out << (c ? ",x" : "x") << (c + 1);
    out << '\n';
    for (Index r = 0; r < values.rows(); ++r) {
        for (Index c = 0; c < values.cols(); ++c) {
            if (c) out << ',';
            out << format_double(values(r, c));
        }
        out << '\n';
    }
}

void write_report(std::ostream& out, const SelectionReport& report) {
    // Hand-rolled so key order and float formatting are pinned down.
    out << "{\n";
    out << "  \"chosen_d\": " << report.chosen_d << ",\n";
    out << "  \"phi_star\": " << format_double(report.phi_star) << ",\n";
    out << "  \"posterior\": [";
    for (Index i = 0; i < report.posterior.size(); ++i) {
        if (i) out << ", ";
        out << "{\"d\": " << report.curve.d_at(static_cast<int>(i))
            << ", \"prob\": " << format_double(report.posterior(i)) << "}";
    }
    out << "],\n";
    out << "  \"curve\": [";
    for (int i = 0; i < report.curve.size(); ++i) {
        if (i) out << ", ";
        out << "{\"d\": " << report.curve.d_at(i)
            << ", \"log_evidence\": " << format_double(report.curve.log_evidence(i))
            << ", \"a\": " << format_double(report.curve.a_values(i)) << "}";
    }
    out << "],\n";
    out << "  \"warnings\": [";
    for (std::size_t i = 0; i < report.warnings.size(); ++i) {
        if (i) out << ", ";
        out << nlohmann::json(report.warnings[i]).dump();
    }
    out << "]\n";
    out << "}\n";
}

SelectionReport read_report(std::istream& in) {
    const nlohmann::json j = nlohmann::json::parse(in);
    SelectionReport report;
    report.chosen_d = j.at("chosen_d").get<int>();
    report.phi_star = j.at("phi_star").get<double>();
    report.curve.phi = report.phi_star;

    const auto& curve = j.at("curve");
    report.curve.d_min = curve.empty() ? 1 : curve.front().at("d").get<int>();
    report.curve.log_evidence.resize(static_cast<Index>(curve.size()));
    report.curve.a_values.resize(static_cast<Index>(curve.size()));
    for (Index i = 0; i < static_cast<Index>(curve.size()); ++i) {
        report.curve.log_evidence(i) = curve[i].at("log_evidence").get<double>();
        report.curve.a_values(i) = curve[i].at("a").get<double>();
    }

    const auto& post = j.at("posterior");
    report.posterior.resize(static_cast<Index>(post.size()));
    for (Index i = 0; i < static_cast<Index>(post.size()); ++i)
        report.posterior(i) = post[i].at("prob").get<double>();

    for (const auto& w : j.at("warnings"))
        report.warnings.push_back(w.get<std::string>());
    return report;
}

void write_curve_csv(std::ostream& out, const EvidenceCurve& curve) {
    out << "d,log_evidence,a\n";
    for (int i = 0; i < curve.size(); ++i)
        out << curve.d_at(i) << ',' << format_double(curve.log_evidence(i))
            << ',' << format_double(curve.a_values(i)) << '\n';
}

void write_curves_csv(std::ostream& out,
                      const std::vector<EvidenceCurve>& curves) {
    out << "phi,d,log_evidence,a\n";
    for (const auto& curve : curves)
        for (int i = 0; i < curve.size(); ++i)
            out << format_double(curve.phi) << ',' << curve.d_at(i) << ','
                << format_double(curve.log_evidence(i)) << ','
                << format_double(curve.a_values(i)) << '\n';
}

void write_benchmark_csv(std::ostream& out, const BenchmarkTable& table) {
    out << "method,n,snr,replications,accuracy,under,over\n";
    for (std::size_t c = 0; c < table.cells.size(); ++c) {
        const auto& cell = table.cells[c];
        for (std::size_t m = 0; m < table.methods.size(); ++m) {
            out << method_name(table.methods[m]) << ',' << cell.n << ','
                << format_double(cell.snr) << ',' << table.replications << ','
                << format_double(table.accuracy(c, m)) << ',' << cell.under[m]
                << ',' << cell.over[m] << '\n';
        }
    }
}

}  // namespace pcadim
