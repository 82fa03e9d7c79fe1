#include "pcadim/baselines.hpp"

#include "pcadim/evidence.hpp"
#include "pcadim/special_functions.hpp"

#include <cmath>
#include <limits>

namespace pcadim {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_spectrum(const Vector& eigenvalues, const char* who) {
    if (eigenvalues.size() < 2)
        throw std::invalid_argument(std::string(who) + ": need at least 2 eigenvalues");
}

int argmax_smallest(const Vector& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (v(i) > v(best)) best = i;
    return best;
}

// Strictly decreasing copy: collapse ties downward by delta = 1e-12*lambda_1.
Vector jitter_ties(const Vector& eigenvalues) {
    Vector lam = eigenvalues;
    const double delta = 1e-12 * std::max(lam(0), 1e-300);
    for (Index j = 1; j < lam.size(); ++j)
        lam(j) = std::min(lam(j), lam(j - 1) - delta);
    return lam;
}

}  // namespace

double laplace_evidence(const Vector& eigenvalues, Index n, int d) {
    check_spectrum(eigenvalues, "laplace_evidence");
    const Index p = eigenvalues.size();
    if (d < 1 || d > static_cast<int>(p) - 1)
        throw std::invalid_argument("laplace_evidence: d must lie in [1, p-1]");
    if (n <= d)
        throw std::domain_error(
            "laplace_evidence: requires more observations than components");

    const Vector lam = jitter_ties(eigenvalues);
    const double s2 = sigma2_ml(eigenvalues, d);
    const double ln_n = std::log(static_cast<double>(n));

    double log_pu = -d * std::log(2.0);
    double sum_log_lam = 0.0;
    for (int i = 1; i <= d; ++i) {
        const double half = 0.5 * (p - i + 1);
        log_pu += log_gamma(half) - half * std::log(M_PI);
        if (!(lam(i - 1) > 0.0)) return kNegInf;  // cannot place d components
        sum_log_lam += std::log(lam(i - 1));
    }

    double log_az = 0.0;
    for (int i = 0; i < d; ++i) {
        const double inv_i = 1.0 / lam(i);
        for (Index j = i + 1; j < p; ++j) {
            const double hat_j = (j < d) ? lam(j) : s2;
            const double gap_inv = 1.0 / hat_j - inv_i;
            const double gap = lam(i) - lam(j);
            if (!(gap_inv > 0.0) || !(gap > 0.0)) return kNegInf;
            log_az += std::log(gap_inv) + std::log(gap) + ln_n;
        }
    }

    const double m = p * static_cast<double>(d) - 0.5 * d * (d + 1);
    return log_pu - 0.5 * n * sum_log_lam - 0.5 * n * (p - d) * std::log(s2)
           + 0.5 * (m + d) * std::log(2.0 * M_PI) - 0.5 * log_az
           - 0.5 * d * ln_n;
}

BaselineResult laplace_select(const Vector& eigenvalues, Index n, int d_min,
                              int d_max) {
    check_spectrum(eigenvalues, "laplace_select");
    const Index p = eigenvalues.size();
    if (d_min < 1 || d_max > static_cast<int>(p) - 1 || d_min > d_max)
        throw std::invalid_argument("laplace_select: bad d range");
    BaselineResult result;
    result.d_min = d_min;
    result.scores.resize(d_max - d_min + 1);
    for (int d = d_min; d <= d_max; ++d)
        result.scores(d - d_min) = laplace_evidence(eigenvalues, n, d);
    result.chosen_d = result.d_at(argmax_smallest(result.scores));
    return result;
}

BaselineResult profile_likelihood_select(const Vector& eigenvalues, int q_max) {
    check_spectrum(eigenvalues, "profile_likelihood_select");
    const Index p = eigenvalues.size();
    if (q_max < 1 || q_max > static_cast<int>(p) - 1)
        throw std::invalid_argument("profile_likelihood_select: bad q_max");
    const double lambda1 = eigenvalues(0);
    const double var_floor = 1e-12 * std::max(lambda1 * lambda1, 1e-300);

    BaselineResult result;
    result.d_min = 1;
    result.scores.resize(q_max);
    for (int q = 1; q <= q_max; ++q) {
        const double mu1 = eigenvalues.head(q).mean();
        const double mu2 = eigenvalues.tail(p - q).mean();
        const double ssd = (eigenvalues.head(q).array() - mu1).square().sum()
                           + (eigenvalues.tail(p - q).array() - mu2).square().sum();
        const double pooled =
            std::max(ssd / std::max<double>(static_cast<double>(p) - 2.0, 1.0),
                     var_floor);
        result.scores(q - 1) =
            -0.5 * p * std::log(2.0 * M_PI * pooled) - 0.5 * ssd / pooled;
    }
    result.chosen_d = result.d_at(argmax_smallest(result.scores));
    return result;
}

BaselineResult isotropic_ml_select(const Vector& eigenvalues, Index n, int d_max) {
    check_spectrum(eigenvalues, "isotropic_ml_select");
    const Index p = eigenvalues.size();
    if (d_max < 1 || d_max > static_cast<int>(p) - 1)
        throw std::invalid_argument("isotropic_ml_select: bad d_max");
    const double floor = 1e-12 * std::max(eigenvalues(0), 1e-300);
    const double constant = p * std::log(2.0 * M_PI) + p;

    BaselineResult result;
    result.d_min = 1;
    result.scores.resize(d_max);
    for (int d = 1; d <= d_max; ++d) {
        const double a_hat = eigenvalues.head(d).mean();
        const double b_hat = std::max(eigenvalues.tail(p - d).mean(), floor);
        result.scores(d - 1) =
            (a_hat > 0.0)
                ? -0.5 * n * (d * std::log(a_hat) + (p - d) * std::log(b_hat) + constant)
                : kNegInf;
    }
    result.chosen_d = result.d_at(argmax_smallest(result.scores));
    return result;
}

}  // namespace pcadim
