#pragma once

#include "pcadim/types.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace pcadim {

// Reading of the noise plug-in used to build the gamma shape: `variance`
// takes sigma^2 = mean trailing eigenvalue (the maximum-likelihood noise
// variance), `mean_eigenvalue` treats that mean as sigma itself.
enum class SigmaConvention { variance, mean_eigenvalue };

// Normal-gamma prior hyperparameters for one candidate dimension. The model
// is exact only when b = phi/2, so b is derived, never free.
struct NgHyperparams {
    double a;
    double b;
    double phi;
};

// Inclusive candidate-dimension range.
struct DRange {
    int lo = 1;
    int hi = 1;

    int size() const noexcept { return hi - lo + 1; }
};

// Log evidence per candidate dimension at a fixed phi; entry i is d = d_min + i.
struct EvidenceCurve {
    double phi = 0.0;
    int d_min = 1;
    Vector log_evidence;
    Vector a_values;

    int size() const noexcept { return static_cast<int>(log_evidence.size()); }
    int d_at(int i) const noexcept { return d_min + i; }
};

// Shape diagnostics for the phi-selection heuristic.
struct CurveShape {
    int argmax_index = 0;
    bool interior = false;
    bool slope_ok = false;
    double curvature = 0.0;  // -(second difference) at the argmax when interior
};

struct PhiPick {
    std::size_t index = 0;
    bool fallback = false;  // every curve was discarded by the shape rules
};

struct HeuristicPhiResult {
    std::size_t phi_index = 0;
    double phi_star = 0.0;
    bool fallback = false;
    std::vector<EvidenceCurve> curves;
};

struct SelectionReport {
    int chosen_d = 0;
    double phi_star = 0.0;
    Vector posterior;     // aligned with curve.log_evidence
    EvidenceCurve curve;  // the winning phi's curve
    double second_diff_at_max = 0.0;  // 0 when the maximum is not interior
    std::vector<std::string> warnings;
};

struct PpcaMlFit {
    Matrix w;
    double sigma2 = 0.0;
};

// Everything the selectors consume: observation norms and the descending
// spectrum of the ML covariance. Computed once per dataset and shared.
struct ModelInputs {
    Vector norms;
    Vector eigenvalues;
    Index n = 0;
    Index p = 0;
};

ModelInputs make_model_inputs(const DataMatrix& data);

// Mean of the p-d smallest eigenvalues (the ML noise variance of a rank-d
// model), floored at 1e-12 * lambda_1 to stay positive.
double sigma2_ml(const Vector& eigenvalues, int d);

// a = sigma2_ml / phi under the variance convention (floored at 1e-8),
// b = phi / 2 exactly.
NgHyperparams hyperparams_for_d(const Vector& eigenvalues, int d, double phi,
                                SigmaConvention conv = SigmaConvention::variance);

// Closed-form log marginal likelihood of the rank-d model at fixed (a, phi),
// b = phi/2. Depends on the data only through the row norms:
//   sum_i [ ln 2 - (p/2) ln(2 pi) - (p/2) ln(2/phi) - ln Gamma(a + d/2)
//           + nu * ln(sqrt(phi) |x_i| / 2) + ln K_nu(sqrt(phi) |x_i|) ]
// with nu = a + (d - p)/2. Throws std::domain_error for zero-norm rows
// (callers should drop or jitter such rows); the row index is reported.
double log_evidence(const Vector& norms, int p, int d, double a, double phi);

// 40 log-spaced phi values spanning [1e-2, 1e2] / mean-eigenvalue.
Vector default_phi_grid(const Vector& eigenvalues, int count = 40);

// [1, min(n, p) - 1]: the widest range on which the noise plug-in stays
// positive for full-rank data.
DRange default_d_range(Index n, Index p);

EvidenceCurve evidence_curve(const ModelInputs& inputs, double phi, DRange d_range,
                             SigmaConvention conv = SigmaConvention::variance);
EvidenceCurve evidence_curve(const DataMatrix& data, double phi, DRange d_range,
                             SigmaConvention conv = SigmaConvention::variance);

// Argmax position, endpoint/slope screening, and peak curvature of a curve.
CurveShape analyze_curve(const EvidenceCurve& curve);

// The curvature contest across phi candidates: keep curves whose maximum is
// interior and whose mean rise exceeds the mean fall, then take the sharpest
// peak. When every curve is discarded, fall back to the sharpest interior
// point and flag it.
PhiPick pick_phi(const std::vector<EvidenceCurve>& curves);

HeuristicPhiResult heuristic_phi(const ModelInputs& inputs, const Vector& phi_grid,
                                 DRange d_range,
                                 SigmaConvention conv = SigmaConvention::variance);

// Softmax with max subtraction; sums to one.
Vector posterior_probs(const Vector& log_evidence);

SelectionReport select_dimension(const ModelInputs& inputs, const Vector& phi_grid,
                                 DRange d_range,
                                 SigmaConvention conv = SigmaConvention::variance);
SelectionReport select_dimension(const DataMatrix& data, const Vector& phi_grid,
                                 DRange d_range,
                                 SigmaConvention conv = SigmaConvention::variance);

// Maximum-likelihood loading matrix W = V_d (L_d - sigma2 I)^{1/2} (rotation
// fixed to the identity) and noise variance from the 1/n-scaled spectrum.
// Throws numeric_error when lambda_d <= sigma2 (no rank-d model fits).
PpcaMlFit fit_ppca_ml(const EigenSpectrum& spectrum, int d);

}  // namespace pcadim
