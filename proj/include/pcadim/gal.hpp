#pragma once

#include "pcadim/rng.hpp"
#include "pcadim/types.hpp"

#include <complex>

namespace pcadim {

// Generalized asymmetric Laplace distribution GAL_p(sigma, mu, s):
// the distribution of mu*u + sqrt(u)*g with u ~ Gamma(s, 1), g ~ N(0, sigma).
// Mean s*mu, covariance s*(sigma + mu*mu'). For p = 1, sigma = 2, mu = 0,
// s = 1 it is the standard Laplace density exp(-|x|)/2.
struct GalParams {
    Matrix sigma;  // symmetric positive definite, p x p
    Vector mu;     // drift, length p
    double s = 1.0;  // shape, > 0
};

// Log density
//   ln f(x) = ln 2 + mu' sigma^{-1} x - (p/2) ln(2 pi) - ln Gamma(s)
//             - (1/2) ln det sigma + (s - p/2)(ln Q - ln C)
//             + ln K_{s - p/2}(Q * C)
// with Q = sqrt(x' sigma^{-1} x) and C = sqrt(2 + mu' sigma^{-1} mu).
// At x = 0 the finite limit is returned when s > p/2; for s <= p/2 the
// density is singular there and std::domain_error is raised.
double gal_log_density(const Vector& x, const GalParams& params);

// Exact draw via the gamma scale mixture.
Vector gal_sample(const GalParams& params, RngStream& rng);

// Gamma(shape, rate) sampling: Marsaglia-Tsang squeeze for shape >= 1 with
// the uniform power boost below 1. Mean shape/rate.
double gamma_sample(double shape, double rate, RngStream& rng);

// Characteristic function (1 + u' sigma u / 2 - i mu' u)^{-s}; exposed for
// empirical-CF comparisons in tests.
std::complex<double> gal_characteristic_function(const Vector& u,
                                                 const GalParams& params);

}  // namespace pcadim
