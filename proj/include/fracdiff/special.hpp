#pragma once

#include <complex>

#include "fracdiff/errors.hpp"

namespace fracdiff {

using cplx = std::complex<double>;

/// Parameter pair of the two-parameter Mittag-Leffler function E_{alpha,beta}.
struct MLParams {
    double alpha; ///< series order, must be > 0
    double beta;  ///< second parameter, any real (typically in (0,2])

    MLParams(double a, double b) : alpha(a), beta(b) {
        if (!(a > 0.0))
            throw std::invalid_argument("MLParams: alpha must be > 0");
    }
};

/// Principal branch of log Gamma(z).
///
/// Lanczos rational approximation (the 13-term double-precision set) for
/// Re z >= 0.5; reflection with a branch-tracked log-sin for Re z < 0.5.
/// Relative accuracy ~1e-14 for |z| <= 100 away from the poles.
cplx log_gamma(cplx z);

/// Reciprocal gamma 1/Gamma(z). Entire; returns exactly 0 at z = 0, -1, -2, ...
cplx rgamma(cplx z);

/// Sign-and-log representation of Gamma at a real argument.
/// sign == 0 encodes a pole of Gamma (so the reciprocal is exactly zero).
struct SignedLogGamma {
    double log_abs;
    int sign;
};

/// Gamma(x) for real x as (log|Gamma|, sign); poles map to sign == 0.
SignedLogGamma log_gamma_signed(double x);

/// Two-parameter Mittag-Leffler function E_{alpha,beta}(z).
///
/// Taylor series on the central disk; Kummer-type series at alpha == 1;
/// quadrature of the Hankel-contour integral representation (rays at
/// +-alpha*pi plus a circular arc, with the residue of the integrand's
/// pole picked up inside the sector |arg z| < alpha*pi) in the mid range;
/// algebraic-plus-exponential asymptotics for large |z|; duplication
/// E_{a,b}(z) = (E_{a/2,b}(sqrt z) + E_{a/2,b}(-sqrt z))/2 for alpha > 1.
///
/// Target relative accuracy ~1e-12 for real z in [-50, 5], alpha in (0,2],
/// beta in (0,2]. Throws convergence_error when the internal accuracy
/// target cannot be met.
cplx mittag_leffler(const MLParams& p, cplx z, double tol = 1e-13);

/// Convenience wrapper for real arguments (returns the real part; the
/// imaginary part is checked to be at rounding level).
double mittag_leffler_real(double alpha, double beta, double x, double tol = 1e-13);

} // namespace fracdiff
