#pragma once

#include "fracdiff/kernels.hpp"
#include "fracdiff/solver.hpp"

namespace fracdiff {

/// Fractional moment order delta with its admissibility against a kernel:
/// delta > -1, delta + alpha > 0, and (finiteness against the heavy tail)
/// delta < alpha for alpha < 2, delta <= 2 at alpha = 2.
struct MomentQuery {
    double delta;
    bool admissible;

    MomentQuery(double d, const KernelSpec& spec) : delta(d) {
        admissible = d > -1.0 && d + spec.alpha > 0.0 &&
                     (spec.alpha < 2.0 ? d < spec.alpha : d <= 2.0);
    }
};

/// Closed-form fractional moment <|x(t)|^delta> of the fundamental
/// solution,
///   (eta t^beta)^{d/a} Gamma(1-d/a) Gamma(1+d) Gamma(1+d/a)
///     / (Gamma(1-d/2) Gamma(1+beta d/a) Gamma(1+d/2)),
/// the negative-argument gamma pair rewritten through
/// Gamma(-u) = Gamma(1-u)/(-u) so every evaluated argument stays positive;
/// at alpha = 2 the (then equal) pair cancels algebraically, which also
/// covers delta -> 2. delta = 0 returns the exact limit 1.
double moment_formula(const KernelSpec& spec, const MomentQuery& q, double t);

/// Brute-force moment: adaptive quadrature of |x|^delta against the
/// fundamental solution with the measured-tail analytic completion.
/// Throws region_error on tail divergence (delta >= alpha, alpha < 2).
double moment_quadrature(const KernelSpec& spec, const MomentQuery& q, double t,
                         const SolveConfig& cfg = {});

} // namespace fracdiff
