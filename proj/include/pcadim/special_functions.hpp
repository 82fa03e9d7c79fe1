#pragma once

namespace pcadim {

// ln Gamma(x) for x > 0. Relative accuracy ~1e-15 across (0, 1e6].
// Throws std::domain_error outside the domain.
double log_gamma(double x);

// ln K_nu(x), the modified Bessel function of the second kind, evaluated
// entirely in the log domain so the result is finite wherever K_nu(x) is
// representable as a logarithm, even when K itself would over- or underflow
// (orders in the thousands, arguments from 1e-3 to 700 and beyond).
//
// Uses K_{-nu} = K_nu, then one of three evaluation routes:
//   - uniform large-order asymptotics for nu >= 100 with nu >= x,
//   - Temme's series at order |mu| <= 1/2 for x <= 2,
//   - a Steed-style continued fraction (scaled by e^x) for x > 2,
// followed by the stable upward recurrence with renormalization.
// Throws std::domain_error for x <= 0 or non-finite inputs.
double log_bessel_k(double nu, double x);

}  // namespace pcadim
