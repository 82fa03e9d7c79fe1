#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracle {
namespace {

double log_cosh(double u) {
    u = std::abs(u);
    return u + std::log1p(std::exp(-2.0 * u)) - std::log(2.0);
}

// Composite Simpson over [lo, hi] of exp(g(t)), result in log domain.
template <typename G>
double log_simpson(G&& g, double lo, double hi, int intervals) {
    if (intervals % 2 != 0) ++intervals;
    const double h = (hi - lo) / intervals;
    std::vector<double> terms;
    terms.reserve(intervals + 1);
    for (int i = 0; i <= intervals; ++i) {
        const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        terms.push_back(std::log(w) + g(lo + i * h));
    }
    return std::log(h / 3.0) + log_sum_exp(terms);
}

}  // namespace

double log_sum_exp(const std::vector<double>& v) {
    const double m = *std::max_element(v.begin(), v.end());
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

double log_bessel_k(double nu, double x) {
    nu = std::abs(nu);
    if (!(x > 0.0)) throw std::invalid_argument("oracle::log_bessel_k: x must be positive");
    auto g = [&](double t) { return -x * std::cosh(t) + log_cosh(nu * t); };

    // Locate the integrand peak; it sits at t = 0 when x dominates, else near
    // asinh(nu/x) where x*sinh(t) = nu.
    double t_peak = (nu * nu > x) ? std::asinh(nu / x) : 0.0;
    {
        double lo = 0.0, hi = t_peak + 2.0;
        for (int i = 0; i < 200; ++i) {
            const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (g(m1) < g(m2)) lo = m1; else hi = m2;
        }
        t_peak = 0.5 * (lo + hi);
    }
    const double g_peak = g(t_peak);
    double hi = t_peak + 1.0;
    while (g(hi) > g_peak - 130.0) hi += 1.0;
    return log_simpson(g, 0.0, hi, 400000);
}

double gal_log_density(const Eigen::VectorXd& x, const Eigen::MatrixXd& sigma,
                       const Eigen::VectorXd& mu, double s) {
    const int p = static_cast<int>(x.size());
    const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("oracle::gal_log_density: sigma not SPD");
    const Eigen::MatrixXd L = llt.matrixL();
    double log_det = 0.0;
    for (int i = 0; i < p; ++i) log_det += 2.0 * std::log(L(i, i));
    const double qxx = x.dot(llt.solve(x));
    const double qxm = x.dot(llt.solve(mu));
    const double qmm = mu.dot(llt.solve(mu));
    const double lgam_s = std::lgamma(s);
    const double half_p = 0.5 * p;

    // Integrand of the u-mixture after u = e^v (jacobian adds +v).
    auto h = [&](double v) {
        const double u = std::exp(v);
        const double quad = (qxx - 2.0 * u * qxm + u * u * qmm) / (2.0 * u);
        return -half_p * (std::log(2.0 * M_PI) + v) - 0.5 * log_det - quad
               + (s - 1.0) * v - u - lgam_s + v;
    };

    double v_peak = 0.0, h_peak = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 4000; ++i) {
        const double v = -40.0 + 80.0 * i / 4000.0;
        const double hv = h(v);
        if (hv > h_peak) { h_peak = hv; v_peak = v; }
    }
    double lo = v_peak, hi = v_peak;
    while (h(lo) > h_peak - 130.0 && lo > -700.0) lo -= 0.5;
    while (h(hi) > h_peak - 130.0 && hi < 700.0) hi += 0.5;

    const int n_pts = 120000;
    const double step = (hi - lo) / n_pts;
    std::vector<double> terms;
    terms.reserve(n_pts + 1);
    for (int i = 0; i <= n_pts; ++i) terms.push_back(h(lo + i * step));
    return std::log(step) + log_sum_exp(terms);
}

double gal_radial_log_density(double r, int p, double phi, double s) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
    x(0) = r;
    const Eigen::MatrixXd sigma =
        (2.0 / phi) * Eigen::MatrixXd::Identity(p, p);
    return gal_log_density(x, sigma, Eigen::VectorXd::Zero(p), s);
}

double log_evidence(const std::vector<double>& norms, int p, int d, double a,
                    double phi) {
    const double s = a + 0.5 * d;
    double total = 0.0;
    for (double r : norms) total += gal_radial_log_density(r, p, phi, s);
    return total;
}

std::vector<double> sym_eigenvalues(const Eigen::MatrixXd& S) {
    const int p = static_cast<int>(S.rows());
    auto charpoly = [&](double lambda) {
        Eigen::MatrixXd M = S - lambda * Eigen::MatrixXd::Identity(p, p);
        return Eigen::PartialPivLU<Eigen::MatrixXd>(M).determinant();
    };
    // Gershgorin bound on the spectrum.
    double bound = 0.0;
    for (int i = 0; i < p; ++i) bound = std::max(bound, S.row(i).cwiseAbs().sum());
    const double lo = -bound - 1.0, hi = bound + 1.0;
    const int scan = 400000;
    std::vector<double> roots;
    double prev_x = lo, prev_f = charpoly(lo);
    for (int i = 1; i <= scan && static_cast<int>(roots.size()) < p; ++i) {
        const double x = lo + (hi - lo) * i / scan;
        const double f = charpoly(x);
        if ((prev_f < 0.0) != (f < 0.0) || f == 0.0) {
            double a0 = prev_x, b0 = x, fa = prev_f;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (a0 + b0);
                const double fm = charpoly(m);
                if ((fa < 0.0) != (fm < 0.0)) { b0 = m; } else { a0 = m; fa = fm; }
            }
            roots.push_back(0.5 * (a0 + b0));
        }
        prev_x = x;
        prev_f = f;
    }
    if (static_cast<int>(roots.size()) != p)
        throw std::runtime_error("oracle::sym_eigenvalues: bracketing missed a root");
    std::sort(roots.begin(), roots.end(), std::greater<double>());
    return roots;
}

}  // namespace oracle
