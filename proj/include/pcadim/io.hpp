#pragma once

#include "pcadim/evidence.hpp"
#include "pcadim/simulation.hpp"
#include "pcadim/types.hpp"

#include <iosfwd>
#include <string>

namespace pcadim {

// Numeric CSV reader: comma-separated doubles, one observation per row,
// optional single header line, LF or CRLF endings. Malformed input throws
// data_error with 1-based row/column coordinates.
DataMatrix read_csv(std::istream& in, bool has_header);
DataMatrix read_csv(const std::string& path, bool has_header);

// Round-trippable double formatting (printf %.17g).
std::string format_double(double v);

// Writes "x1,...,xp" header then %.17g rows, LF line endings.
void write_matrix_csv(std::ostream& out, const Matrix& values);

// Selection report as JSON with a fixed key order:
// {chosen_d, phi_star, posterior: [{d, prob}...],
//  curve: [{d, log_evidence, a}...], warnings: [...]}.
void write_report(std::ostream& out, const SelectionReport& report);

// Parses JSON produced by write_report (field order irrelevant).
SelectionReport read_report(std::istream& in);

// "d,log_evidence,a" rows for one curve.
void write_curve_csv(std::ostream& out, const EvidenceCurve& curve);

// "phi,d,log_evidence,a" rows for every curve of a heuristic sweep.
void write_curves_csv(std::ostream& out,
                      const std::vector<EvidenceCurve>& curves);

// "method,n,snr,replications,accuracy,under,over" rows, methods in table
// order within each cell.
void write_benchmark_csv(std::ostream& out, const BenchmarkTable& table);

}  // namespace pcadim
