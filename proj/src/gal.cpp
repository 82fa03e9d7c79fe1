#include "pcadim/gal.hpp"

#include "pcadim/special_functions.hpp"

#include <cmath>

namespace pcadim {
namespace {

Eigen::LLT<Matrix> checked_cholesky(const GalParams& params) {
    if (params.sigma.rows() != params.sigma.cols())
        throw std::invalid_argument("gal: sigma must be square");
    if (params.mu.size() != params.sigma.rows())
        throw std::invalid_argument("gal: mu/sigma dimension mismatch");
    if (!(params.s > 0.0))
        throw std::invalid_argument("gal: shape s must be positive");
    Eigen::LLT<Matrix> llt(params.sigma);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("gal: sigma must be positive definite");
    return llt;
}

}  // namespace

double gal_log_density(const Vector& x, const GalParams& params) {
    const auto llt = checked_cholesky(params);
    const Index p = params.sigma.rows();
    if (x.size() != p)
        throw std::invalid_argument("gal_log_density: x/sigma dimension mismatch");

    const Matrix l = llt.matrixL();
    double log_det = 0.0;
    for (Index i = 0; i < p; ++i) log_det += 2.0 * std::log(l(i, i));

    const double q2 = x.dot(llt.solve(x));
    const double c2 = 2.0 + params.mu.dot(llt.solve(params.mu));
    const double nu = params.s - 0.5 * p;
    const double base = std::log(2.0) + params.mu.dot(llt.solve(x))
                        - 0.5 * p * std::log(2.0 * M_PI) - log_gamma(params.s)
                        - 0.5 * log_det;
    if (q2 == 0.0) {
        if (nu <= 0.0)
            throw std::domain_error(
                "gal_log_density: density is singular at the origin for s <= p/2");
        // lim_{Q->0} Q^nu K_nu(QC) = Gamma(nu) (2/C)^nu / 2
        return base - nu * std::log(c2) + log_gamma(nu) - std::log(2.0)
               + nu * std::log(2.0);
    }
    const double log_q = 0.5 * std::log(q2);
    const double log_c = 0.5 * std::log(c2);
    return base + nu * (log_q - log_c)
           + log_bessel_k(nu, std::exp(log_q + log_c));
}

Vector gal_sample(const GalParams& params, RngStream& rng) {
    const auto llt = checked_cholesky(params);
    const Index p = params.sigma.rows();
    const double u = gamma_sample(params.s, 1.0, rng);
    Vector g(p);
    for (Index i = 0; i < p; ++i) g(i) = rng.normal();
    return params.mu * u + std::sqrt(u) * (Matrix(llt.matrixL()) * g);
}

double gamma_sample(double shape, double rate, RngStream& rng) {
    if (!(shape > 0.0) || !(rate > 0.0))
        throw std::invalid_argument("gamma_sample: shape and rate must be positive");
    if (shape < 1.0) {
        // boost: G(a) = G(a+1) * U^{1/a}
        const double u = 1.0 - rng.uniform();
        return gamma_sample(shape + 1.0, rate, rng)
               * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = 1.0 - rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return d * v / rate;
    }
}

std::complex<double> gal_characteristic_function(const Vector& u,
                                                 const GalParams& params) {
    const std::complex<double> denom(1.0 + 0.5 * u.dot(params.sigma * u),
                                     -params.mu.dot(u));
    return std::pow(denom, -params.s);
}

}  // namespace pcadim
