#include "pcadim/evidence.hpp"

#include "pcadim/linalg.hpp"
#include "pcadim/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pcadim {
namespace {

void check_d(int d, Index p, const char* who) {
    if (d < 1 || d > static_cast<int>(p) - 1)
        throw std::domain_error(std::string(who) + ": d must lie in [1, p-1]");
}

int argmax_smallest(const Vector& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (v(i) > v(best)) best = i;  // strict: ties keep the smaller index
    return best;
}

}  // namespace

ModelInputs make_model_inputs(const DataMatrix& data) {
    ModelInputs out;
    out.n = data.n();
    out.p = data.p();
    out.norms = row_norms(data.values);
    for (Index i = 0; i < out.n; ++i) {
        if (!(out.norms(i) > 0.0))
            throw data_error(data_error::code::zero_norm_row,
                             "row " + std::to_string(i + 1) +
                                 " has zero norm; drop or jitter it before selection",
                             static_cast<long>(i + 1));
    }
    out.eigenvalues = sym_eig(covariance(data)).eigenvalues;
    return out;
}

double sigma2_ml(const Vector& eigenvalues, int d) {
    const Index p = eigenvalues.size();
    check_d(d, p, "sigma2_ml");
    const double lambda1 = eigenvalues(0);
    double mean_tail = eigenvalues.tail(p - d).mean();
    const double floor = lambda1 > 0.0 ? 1e-12 * lambda1 : 1e-300;
    return std::max(mean_tail, floor);
}

NgHyperparams hyperparams_for_d(const Vector& eigenvalues, int d, double phi,
                                SigmaConvention conv) {
    if (!(phi > 0.0)) throw std::invalid_argument("hyperparams_for_d: phi must be positive");
    const double s2 = sigma2_ml(eigenvalues, d);
    double a = (conv == SigmaConvention::variance) ? s2 / phi : (s2 * s2) / phi;
    a = std::max(a, 1e-8);
    return {a, 0.5 * phi, phi};
}

double log_evidence(const Vector& norms, int p, int d, double a, double phi) {
    if (p < 2) throw std::invalid_argument("log_evidence: p must be at least 2");
    check_d(d, p, "log_evidence");
    if (!(a > 0.0) || !(phi > 0.0))
        throw std::invalid_argument("log_evidence: a and phi must be positive");

    const double nu = a + 0.5 * (d - p);
    const double sqrt_phi = std::sqrt(phi);
    const double per_obs_const = std::log(2.0) - 0.5 * p * std::log(2.0 * M_PI)
                                 - 0.5 * p * std::log(2.0 / phi)
                                 - log_gamma(a + 0.5 * d);
    double total = 0.0;
    for (Index i = 0; i < norms.size(); ++i) {
        const double r = norms(i);
        if (!(r > 0.0))
            throw std::domain_error("log_evidence: observation " + std::to_string(i) +
                                    " has zero norm");
        const double arg = sqrt_phi * r;
        total += per_obs_const + nu * std::log(0.5 * arg) + log_bessel_k(nu, arg);
    }
    return total;
}

Vector default_phi_grid(const Vector& eigenvalues, int count) {
    if (count < 1) throw std::invalid_argument("default_phi_grid: count must be >= 1");
    const double mean_ev = eigenvalues.mean();
    if (!(mean_ev > 0.0))
        throw std::invalid_argument("default_phi_grid: spectrum has zero mean eigenvalue");
    const double lo = std::log(1e-2 / mean_ev);
    const double hi = std::log(1e2 / mean_ev);
    Vector grid(count);
    if (count == 1) {
        grid(0) = std::exp(0.5 * (lo + hi));
        return grid;
    }
    for (int i = 0; i < count; ++i)
        grid(i) = std::exp(lo + (hi - lo) * i / (count - 1));
    return grid;
}

DRange default_d_range(Index n, Index p) {
    const int hi = static_cast<int>(std::min(n, p)) - 1;
    return {1, std::max(1, hi)};
}

EvidenceCurve evidence_curve(const ModelInputs& inputs, double phi, DRange d_range,
                             SigmaConvention conv) {
    if (d_range.lo < 1 || d_range.hi > static_cast<int>(inputs.p) - 1 ||
        d_range.lo > d_range.hi)
        throw std::invalid_argument("evidence_curve: d range must lie within [1, p-1]");
    EvidenceCurve curve;
    curve.phi = phi;
    curve.d_min = d_range.lo;
    curve.log_evidence.resize(d_range.size());
    curve.a_values.resize(d_range.size());
    for (int i = 0; i < d_range.size(); ++i) {
        const int d = d_range.lo + i;
        const NgHyperparams h = hyperparams_for_d(inputs.eigenvalues, d, phi, conv);
        curve.a_values(i) = h.a;
        curve.log_evidence(i) =
            log_evidence(inputs.norms, static_cast<int>(inputs.p), d, h.a, phi);
    }
    return curve;
}

EvidenceCurve evidence_curve(const DataMatrix& data, double phi, DRange d_range,
                             SigmaConvention conv) {
    return evidence_curve(make_model_inputs(data), phi, d_range, conv);
}

CurveShape analyze_curve(const EvidenceCurve& curve) {
    const Vector& lev = curve.log_evidence;
    const int m = static_cast<int>(lev.size());
    CurveShape shape;
    shape.argmax_index = argmax_smallest(lev);
    shape.interior = shape.argmax_index > 0 && shape.argmax_index < m - 1;
    if (!shape.interior) return shape;
    const int i = shape.argmax_index;
    const double mean_rise = (lev(i) - lev(0)) / i;
    const double mean_fall = (lev(m - 1) - lev(i)) / (m - 1 - i);
    shape.slope_ok = mean_rise > mean_fall;
    shape.curvature = -(lev(i + 1) - 2.0 * lev(i) + lev(i - 1));
    return shape;
}

PhiPick pick_phi(const std::vector<EvidenceCurve>& curves) {
    if (curves.empty()) throw std::invalid_argument("pick_phi: no curves");
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_index = curves.size();
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const CurveShape s = analyze_curve(curves[k]);
        if (s.interior && s.slope_ok && s.curvature > best) {
            best = s.curvature;
            best_index = k;
        }
    }
    if (best_index < curves.size()) return {best_index, false};

    // Every curve failed the screens (typically all-endpoint maxima on
    // signal-free data). Rank by the sharpest strictly-interior point so the
    // choice stays deterministic, and let the caller surface a warning.
    best = -std::numeric_limits<double>::infinity();
    best_index = 0;
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const Vector& lev = curves[k].log_evidence;
        const int m = static_cast<int>(lev.size());
        for (int i = 1; i + 1 < m; ++i) {
            const double curv = -(lev(i + 1) - 2.0 * lev(i) + lev(i - 1));
            if (curv > best) {
                best = curv;
                best_index = k;
            }
        }
    }
    return {best_index, true};
}

HeuristicPhiResult heuristic_phi(const ModelInputs& inputs, const Vector& phi_grid,
                                 DRange d_range, SigmaConvention conv) {
    if (phi_grid.size() < 1)
        throw std::invalid_argument("heuristic_phi: phi grid must be nonempty");
    if (d_range.size() < 3)
        throw std::invalid_argument("heuristic_phi: d range must span at least 3 values");
    HeuristicPhiResult result;
    result.curves.reserve(phi_grid.size());
    for (Index k = 0; k < phi_grid.size(); ++k)
        result.curves.push_back(evidence_curve(inputs, phi_grid(k), d_range, conv));
    const PhiPick pick = pick_phi(result.curves);
    result.phi_index = pick.index;
    result.fallback = pick.fallback;
    result.phi_star = phi_grid(static_cast<Index>(pick.index));
    return result;
}

Vector posterior_probs(const Vector& log_evidence) {
    if (log_evidence.size() == 0)
        throw std::invalid_argument("posterior_probs: empty input");
    const double m = log_evidence.maxCoeff();
    Vector probs = (log_evidence.array() - m).exp();
    return probs / probs.sum();
}

SelectionReport select_dimension(const ModelInputs& inputs, const Vector& phi_grid,
                                 DRange d_range, SigmaConvention conv) {
    if (phi_grid.size() < 1)
        throw std::invalid_argument("select_dimension: phi grid must be nonempty");
    SelectionReport report;
    if (d_range.size() >= 3) {
        HeuristicPhiResult h = heuristic_phi(inputs, phi_grid, d_range, conv);
        report.phi_star = h.phi_star;
        report.curve = std::move(h.curves[h.phi_index]);
        if (h.fallback)
            report.warnings.push_back(
                "all phi candidates were discarded by the shape heuristic; "
                "falling back to the sharpest interior curvature");
    } else {
        // Too narrow for the shape screens; evaluate at the first phi.
        report.phi_star = phi_grid(0);
        report.curve = evidence_curve(inputs, report.phi_star, d_range, conv);
        report.warnings.push_back(
            "d range narrower than 3 values; phi heuristic skipped");
    }
    report.posterior = posterior_probs(report.curve.log_evidence);
    const int i = argmax_smallest(report.curve.log_evidence);
    report.chosen_d = report.curve.d_at(i);
    if (i > 0 && i + 1 < report.curve.size()) {
        report.second_diff_at_max = report.curve.log_evidence(i + 1)
                                    - 2.0 * report.curve.log_evidence(i)
                                    + report.curve.log_evidence(i - 1);
    }
    return report;
}

SelectionReport select_dimension(const DataMatrix& data, const Vector& phi_grid,
                                 DRange d_range, SigmaConvention conv) {
    return select_dimension(make_model_inputs(data), phi_grid, d_range, conv);
}

PpcaMlFit fit_ppca_ml(const EigenSpectrum& spectrum, int d) {
    const Index p = spectrum.size();
    check_d(d, p, "fit_ppca_ml");
    PpcaMlFit fit;
    fit.sigma2 = sigma2_ml(spectrum.eigenvalues, d);
    Vector scale(d);
    for (int k = 0; k < d; ++k) {
        const double gap = spectrum.eigenvalues(k) - fit.sigma2;
        if (!(gap > 0.0))
            throw numeric_error(
                "fit_ppca_ml: eigenvalue " + std::to_string(k + 1) +
                " does not exceed the noise variance; no rank-" +
                std::to_string(d) + " model fits");
        scale(k) = std::sqrt(gap);
    }
    fit.w = spectrum.eigenvectors.leftCols(d) * scale.asDiagonal();
    return fit;
}

}  // namespace pcadim
