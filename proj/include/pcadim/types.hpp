#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace pcadim {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Raised for defects in user-supplied data (files, CSV cells, degenerate rows).
class data_error : public std::runtime_error {
public:
    enum class code {
        unreadable_file,
        empty_file,
        ragged_row,
        bad_cell,
        zero_norm_row,
    };

    data_error(code c, const std::string& what, long row = -1, long column = -1)
        : std::runtime_error(what), code_(c), row_(row), column_(column) {}

    code error_code() const noexcept { return code_; }
    long row() const noexcept { return row_; }
    long column() const noexcept { return column_; }

private:
    code code_;
    long row_;
    long column_;
};

// Raised when a numeric routine cannot deliver its contract
// (eigensolver failure, model mismatch, degenerate configuration).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Observations are rows. `centered` records that column means have been
// removed (or that the caller asserts the data is mean-zero by construction).
struct DataMatrix {
    Matrix values;
    bool centered = false;

    Index n() const noexcept { return values.rows(); }
    Index p() const noexcept { return values.cols(); }
};

// Eigendecomposition of a symmetric PSD matrix, eigenvalues descending.
struct EigenSpectrum {
    Vector eigenvalues;
    Matrix eigenvectors;  // column k pairs with eigenvalues[k]

    Index size() const noexcept { return eigenvalues.size(); }
};

}  // namespace pcadim
