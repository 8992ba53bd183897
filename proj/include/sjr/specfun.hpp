#ifndef SJR_SPECFUN_HPP
#define SJR_SPECFUN_HPP

// Scalar special-function kernel used by the fading analytics: log-gamma,
// regularized incomplete gamma ratios, the Gauss hypergeometric function on
// the real axis left of the unit circle, and the Bessel function J1.
//
// All functions are pure and reentrant. Domain violations throw
// std::domain_error; non-convergent evaluations throw std::runtime_error
// with a diagnostic message.

namespace sjr::specfun {

/// Natural log of the gamma function, x > 0.
/// Relative error below 1e-13 on [0.5, 170].
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(s, x) = gamma(s,x) / Gamma(s).
/// s > 0, x >= 0. P(s, 0) = 0, increasing in x, limit 1.
double reg_lower_gamma(double s, double x);

/// Regularized upper incomplete gamma Q(s, x) = Gamma(s,x) / Gamma(s).
/// s > 0, x >= 0. Q(s, 0) = 1, decreasing in x, limit 0.
double reg_upper_gamma(double s, double x);

/// Gauss hypergeometric 2F1(a, b; c; z) for real z < 1.
///
/// Maclaurin series inside |z| <= 1/2, Pfaff transformation
/// z -> z/(z-1) for z < -1/2 (the mapped argument lands in (1/3, 1)).
/// c must not be zero or a negative integer. Stops when the running term
/// drops below 1e-16 of the partial sum; throws after 10000 terms.
double gauss_2f1(double a, double b, double c, double z);

/// Bessel function of the first kind, order 1. Odd in x.
double bessel_j1(double x);

}  // namespace sjr::specfun

#endif
