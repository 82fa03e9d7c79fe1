#include "pcadim/linalg.hpp"

#include <cmath>

namespace pcadim {

DataMatrix center(const DataMatrix& data) {
    DataMatrix out;
    out.values = data.values.rowwise() - data.values.colwise().mean();
    out.centered = true;
    return out;
}

DataMatrix assume_centered(DataMatrix data) {
    data.centered = true;
    return data;
}

Matrix covariance(const DataMatrix& data) {
    if (!data.centered)
        throw std::invalid_argument("covariance: data must be centered first");
    if (data.n() == 0 || data.p() == 0)
        throw std::invalid_argument("covariance: empty data matrix");
    return covariance_matrix(data.values);
}

EigenSpectrum sym_eig(const Matrix& s) {
    if (s.rows() != s.cols())
        throw std::invalid_argument("sym_eig: matrix must be square");
    const double scale = s.cwiseAbs().maxCoeff();
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-10 * (scale + 1.0))
        throw std::invalid_argument("sym_eig: matrix must be symmetric");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(s);
    if (solver.info() != Eigen::Success)
        throw numeric_error("sym_eig: eigensolver failed to converge");

    const Index p = s.rows();
    EigenSpectrum out;
    out.eigenvalues.resize(p);
    out.eigenvectors.resize(p, p);
    for (Index k = 0; k < p; ++k) {
        // Eigen returns ascending order; flip to descending.
        double lambda = solver.eigenvalues()(p - 1 - k);
        if (lambda < 0.0) lambda = 0.0;  // PSD round-off
        out.eigenvalues(k) = lambda;
        out.eigenvectors.col(k) = solver.eigenvectors().col(p - 1 - k);
    }
    return out;
}

Vector row_norms(const Matrix& x) {
    return x.rowwise().norm();
}

Matrix gaussian_matrix(Index n, Index p, RngStream& rng) {
    Matrix out(n, p);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < p; ++j) out(i, j) = rng.normal();
    return out;
}

Matrix haar_orthogonal(Index p, RngStream& rng) {
    const Matrix g = gaussian_matrix(p, p, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index k = 0; k < p; ++k) {
        if (r(k, k) < 0.0) q.col(k) = -q.col(k);
    }
    return q;
}

}  // namespace pcadim
