#pragma once

#include "pcadim/rng.hpp"
#include "pcadim/types.hpp"

namespace pcadim {

// Subtract column means; marks the result centered.
[[nodiscard]] DataMatrix center(const DataMatrix& data);

// Assert that the caller guarantees mean-zero data (e.g. draws from a
// centered generative model) without touching the values.
[[nodiscard]] DataMatrix assume_centered(DataMatrix data);

// Sample covariance S = X'X / n of centered data, exactly symmetrized.
// The 1/n normalization matches the maximum-likelihood convention used by
// every selector in this library. Throws std::invalid_argument when the
// centered flag is unset or the matrix is empty.
Matrix covariance(const DataMatrix& data);

// X'X / n of an arbitrary row-sample expression, symmetrized.
template <typename Derived>
Matrix covariance_matrix(const Eigen::MatrixBase<Derived>& rows) {
    Matrix s = (rows.transpose() * rows) / static_cast<double>(rows.rows());
    return 0.5 * (s + s.transpose());
}

// Eigendecomposition of a symmetric matrix, eigenvalues descending and
// negative round-off clamped to zero. Throws numeric_error on solver failure
// and std::invalid_argument when the input is not square/symmetric.
EigenSpectrum sym_eig(const Matrix& s);

// Row-wise Euclidean norms.
Vector row_norms(const Matrix& x);

// n-by-p matrix of i.i.d. standard normals drawn from the stream,
// filled row-major so the layout is reproducible.
Matrix gaussian_matrix(Index n, Index p, RngStream& rng);

// Orthogonal matrix distributed by the rotation-invariant (Haar) measure:
// QR of a Gaussian matrix with the R-diagonal signs folded into Q.
Matrix haar_orthogonal(Index p, RngStream& rng);

}  // namespace pcadim
