#pragma once

// Monte-Carlo comparison helpers for the distributional tests.

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace teststat {

// Two-sample Kolmogorov-Smirnov statistic sup|F1 - F2|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

// Asymptotic two-sample critical value at significance alpha = 1%.
double ks_critical_1pct(std::size_t n, std::size_t m);

// Column means of a draws-by-dim sample matrix.
Eigen::VectorXd sample_mean(const Eigen::MatrixXd& draws);

// Sample covariance (1/N, about the sample mean).
Eigen::MatrixXd sample_cov(const Eigen::MatrixXd& draws);

// Monte-Carlo standard error of each entry of sample_mean.
Eigen::VectorXd mean_standard_error(const Eigen::MatrixXd& draws);

// Monte-Carlo standard error of each entry of sample_cov, from the empirical
// fourth moments: SE(c_jk) = sqrt(Var[(x_j-m_j)(x_k-m_k)] / N).
Eigen::MatrixXd cov_standard_error(const Eigen::MatrixXd& draws);

// FNV-1a over the raw bytes of the matrix, for dataset-identity checks.
std::uint64_t matrix_checksum(const Eigen::MatrixXd& m);

}  // namespace teststat
