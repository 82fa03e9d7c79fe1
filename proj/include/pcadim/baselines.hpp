#pragma once

#include "pcadim/types.hpp"

namespace pcadim {

// Competing selectors. All consume the descending 1/n-scaled spectrum of the
// sample covariance and break score ties toward the smallest dimension.

struct BaselineResult {
    int chosen_d = 0;
    int d_min = 1;
    Vector scores;  // entry i scores d = d_min + i

    int d_at(int i) const noexcept { return d_min + i; }
};

// Laplace approximation of the rank-d model evidence,
//   ln p(X|d) ~ ln p(U) - (n/2) sum_{j<=d} ln l_j - (n(p-d)/2) ln s2
//               + ((m+d)/2) ln 2pi - (1/2) ln|A_Z| - (d/2) ln n
// with m = pd - d(d+1)/2, p(U) the Stiefel-manifold volume term, s2 the
// trailing-eigenvalue mean, and |A_Z| the pairwise eigenvalue-gap product.
// Tied eigenvalues are jittered by 1e-12 * lambda_1; configurations whose
// gap terms would be nonpositive score -infinity. Requires n > d.
double laplace_evidence(const Vector& eigenvalues, Index n, int d);

BaselineResult laplace_select(const Vector& eigenvalues, Index n, int d_min,
                              int d_max);

// Profile likelihood: split the spectrum at q, score two Gaussian blocks
// under a pooled variance (floored at 1e-12 * lambda_1^2), take the argmax.
BaselineResult profile_likelihood_select(const Vector& eigenvalues, int q_max);

// Isotropic maximum likelihood: score(d) = -(n/2)[d ln a_d + (p-d) ln b_d
// + p ln 2pi + p] with a_d the leading-eigenvalue mean and b_d the trailing
// mean (floored at 1e-12 * lambda_1).
BaselineResult isotropic_ml_select(const Vector& eigenvalues, Index n, int d_max);

}  // namespace pcadim
