#pragma once

// Gamma-function machinery and the normalization constants of the
// ultraspherical measures d nu_m = c_m |sin(theta)|^m d theta.

namespace sharpconvex::specfun {

// ln Gamma(x) for x > 0. Relative error below 1e-13 on (0, 170].
// Throws DomainError for x <= 0 or non-finite x.
double ln_gamma(double x);

// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b), a, b > 0.
double ln_beta(double a, double b);

// c_m = Gamma(m/2 + 1) / (2 Gamma(1/2) Gamma(m/2 + 1/2)), m > -1.
// The measure nu_m has total mass one with this constant.
double c_m(double m);

// c_m / c_{m+2}; equals (m + 1) / (m + 2).
double c_ratio(double m);

}  // namespace sharpconvex::specfun
