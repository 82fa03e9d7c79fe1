#include "pcadim/special_functions.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pcadim {
namespace {

struct KPair {
    double k_mu;    // K_mu(x), possibly scaled by exp(-log_scale)
    double k_mu1;   // K_{mu+1}(x), same scaling
    double log_scale;
};

// Temme's series for K_mu and K_{mu+1}, |mu| <= 1/2, 0 < x <= 2 (unscaled).
KPair temme_series(double mu, double x) {
    const double x2 = 0.5 * x;
    const double mu2 = mu * mu;
    const double pimu = M_PI * mu;
    const double fact = (pimu == 0.0) ? 1.0 : pimu / std::sin(pimu);
    const double d = -std::log(x2);
    const double e = mu * d;
    const double fact2 = (e == 0.0) ? 1.0 : std::sinh(e) / e;
    const double gp = 1.0 / std::tgamma(1.0 + mu);
    const double gm = 1.0 / std::tgamma(1.0 - mu);
    double gam1;
    if (std::abs(mu) < 0.02) {
        // [1/Gamma(1-mu) - 1/Gamma(1+mu)]/(2mu) = -(a1 + a3 mu^2 + ...) with
        // a_k the Taylor coefficients of 1/Gamma(1+x); direct evaluation
        // cancels catastrophically as mu -> 0.
        gam1 = -(0.57721566490153286
                 + mu2 * (-0.04200263503409524
                          + mu2 * (-0.042197734555544333
                                   + mu2 * 0.0072189432466630995)));
    } else {
        gam1 = (gm - gp) / (2.0 * mu);
    }
    const double gam2 = 0.5 * (gm + gp);

    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    const double ee = std::exp(e);
    double p = 0.5 * ee / gp;         // (x/2)^{-mu} Gamma(1+mu) / 2
    double q = 0.5 / (ee * gm);       // (x/2)^{+mu} Gamma(1-mu) / 2
    double c = 1.0;
    const double x2sq = x2 * x2;
    double sum1 = p;
    for (int k = 1; k <= 500; ++k) {
        ff = (k * ff + p + q) / (k * k - mu2);
        c *= x2sq / k;
        p /= (k - mu);
        q /= (k + mu);
        const double del = c * ff;
        sum += del;
        sum1 += c * (p - k * ff);
        if (std::abs(del) < std::abs(sum) * 1e-17) break;
    }
    return {sum, sum1 * (2.0 / x), 0.0};
}

// Steed/Thompson-Barnett continued fraction for x > 2; returns e^x K_mu and
// e^x K_{mu+1} with log_scale = -x so callers never touch the raw magnitude.
KPair steed_cf2(double mu, double x) {
    const double mu2 = mu * mu;
    const double a1 = 0.25 - mu2;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double q = a1, c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 20000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < 1e-17) break;
    }
    h = a1 * h;
    const double k_mu = std::sqrt(M_PI / (2.0 * x)) / s;
    const double k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
    return {k_mu, k_mu1, -x};
}

// Debye polynomials u_k(t) generated from
//   u_{k+1} = t^2 (1 - t^2) u_k' / 2 + (1/8) int_0^t (1 - 5 s^2) u_k(s) ds.
std::vector<std::vector<double>> build_debye_polynomials(int kmax) {
    std::vector<std::vector<double>> u(kmax + 1);
    u[0] = {1.0};
    for (int k = 0; k < kmax; ++k) {
        const auto& c = u[k];
        const int deg = static_cast<int>(c.size()) - 1;
        std::vector<double> next(3 * (k + 1) + 1, 0.0);
        for (int j = 1; j <= deg; ++j) {
            const double dj = j * c[j];
            next[j + 1] += 0.5 * dj;
            next[j + 3] -= 0.5 * dj;
        }
        for (int j = 0; j <= deg; ++j) {
            next[j + 1] += 0.125 * c[j] / (j + 1);
            next[j + 3] -= 0.625 * c[j] / (j + 3);
        }
        u[k + 1] = std::move(next);
    }
    return u;
}

double polyval(const std::vector<double>& coef, double t) {
    double r = 0.0;
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) r = r * t + *it;
    return r;
}

// Uniform large-order expansion, accurate to ~1e-13 relative for nu >= 100.
double debye_log_k(double nu, double x) {
    static const std::vector<std::vector<double>> U = build_debye_polynomials(10);
    const double z = x / nu;
    const double r = std::sqrt(1.0 + z * z);
    const double t = 1.0 / r;
    const double eta = r + std::log(z / (1.0 + r));
    double sum = 1.0, sign = -1.0, nupow = nu;
    for (std::size_t k = 1; k < U.size(); ++k) {
        const double term = sign * polyval(U[k], t) / nupow;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        sign = -sign;
        nupow *= nu;
    }
    return 0.5 * std::log(M_PI / (2.0 * nu)) - nu * eta + 0.5 * std::log(t)
           + std::log(sum);
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("log_gamma: argument must be positive and finite");
    return std::lgamma(x);
}

double log_bessel_k(double nu, double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("log_bessel_k: argument must be positive and finite");
    if (!std::isfinite(nu))
        throw std::domain_error("log_bessel_k: order must be finite");
    nu = std::abs(nu);  // K_{-nu} = K_nu

    if (nu >= 100.0 && nu >= x) return debye_log_k(nu, x);

    const int steps = static_cast<int>(nu + 0.5);
    const double mu = nu - steps;  // in [-1/2, 1/2)
    KPair kp = (x <= 2.0) ? temme_series(mu, x) : steed_cf2(mu, x);
    if (steps == 0) return std::log(kp.k_mu) + kp.log_scale;

    // Upward recurrence K_{m+1} = K_{m-1} + (2m/x) K_m; K grows with the
    // order, so the recurrence is stable. Renormalize to dodge overflow.
    double km = kp.k_mu, kc = kp.k_mu1, scale = kp.log_scale;
    for (int j = 1; j < steps; ++j) {
        const double kn = km + (2.0 * (mu + j) / x) * kc;
        km = kc;
        kc = kn;
        if (kc > 1e100) {
            km /= kc;
            scale += std::log(kc);
            kc = 1.0;
        }
    }
    return std::log(kc) + scale;
}

}  // namespace pcadim
