#pragma once

#include <utility>
#include <vector>

#include "fracdiff/special.hpp"

namespace fracdiff {

/// Full parameter block of a Fox H-function instance
///   H^{m,n}_{p,q}[ z | (a_1,A_1)...(a_p,A_p) ; (b_1,B_1)...(b_q,B_q) ].
///
/// Construction validates 0 <= n <= p, 1 <= m <= q, positivity of the
/// A_j/B_j, and the pole-separation condition
///   A_i (b_j + k) != B_j (a_i - l - 1),  k,l = 0..64, i <= n, j <= m
/// to tolerance 1e-9.
struct HParams {
    int m = 0;
    int n = 0;
    std::vector<std::pair<double, double>> upper; // (a_j, A_j)
    std::vector<std::pair<double, double>> lower; // (b_j, B_j)

    HParams(int m_, int n_, std::vector<std::pair<double, double>> upper_,
            std::vector<std::pair<double, double>> lower_);

    int p() const { return int(upper.size()); }
    int q() const { return int(lower.size()); }
};

/// Pole-free vertical strip available for the L_{i gamma inf} contour:
/// left  = rightmost pole of the Gamma(b_j + B_j xi), j <= m, family;
/// right = leftmost pole of the Gamma(1 - a_j - A_j xi), j <= n, family
/// (+infinity when n == 0).
struct Strip {
    double left;
    double right;
};

Strip contour_strip(const HParams& h);

/// Exponential decay index of Theta along a vertical line; the contour
/// route exists only when this is positive.
double theta_decay_rate(const HParams& h);

/// Vertical contour description: abscissa, truncation half-height, and
/// total node budget. Constructor checks the abscissa against the strip.
struct ContourSpec {
    double gamma;
    double half_height;
    int nodes;

    ContourSpec(const HParams& h, double gamma_, double half_height_, int nodes_);
};

/// log of the gamma-product kernel Theta(xi). Numerator poles raise
/// pole_error naming the factor; denominator poles drive the result to
/// -infinity (Theta -> 0).
cplx theta_log(const HParams& h, cplx xi);

/// Theta(xi) itself, exponentiated from log space.
cplx theta(const HParams& h, cplx xi);

struct EvalResult {
    double value = 0.0;
    double err_est = 0.0;  // truncation estimate (last term / tail bound)
    int terms_used = 0;    // series terms or quadrature nodes
    bool converged = false;
};

/// Mellin-Barnes quadrature of H(z) along the truncated vertical line.
EvalResult eval_contour(const HParams& h, double z, const ContourSpec& c);

/// Same, with the abscissa at the strip midpoint and the truncation height
/// doubled (cap 400) until the result moves by less than 1e-9 relative.
EvalResult eval_contour(const HParams& h, double z);

/// Residue series over the poles of the Gamma(b_j + B_j xi) numerator
/// family: ascending powers of z. power_shift adds a global z^shift factor
/// (the physical kernels evaluate H(z)/z this way, which stays finite at
/// z = 0). Requires simple poles; collisions raise pole_error.
EvalResult eval_series_small(const HParams& h, double z, int terms = 600,
                             double power_shift = 0.0);

/// Residue series over the poles of the Gamma(1 - a_j - A_j xi) numerator
/// family: descending powers of z (the large-argument expansion).
EvalResult eval_series_large(const HParams& h, double z, int terms = 600,
                             double power_shift = 0.0);

/// Summed residue coefficient of every pole whose z-power equals
/// `exponent` (same claim/pairing rules as the series evaluators); the
/// coefficient of z^exponent in the small or large expansion.
double residue_power_coefficient(const HParams& h, bool small_route, double exponent);

/// Argument-power transform: (new params, prefactor 1/delta) with
/// eval(new, x)/delta == eval(old, x^delta).
HParams scale_argument(const HParams& h, double delta);

/// Remove numerator/denominator gamma pairs that cancel: an upper pair at
/// index > n equal to a lower pair at index <= m, or an upper pair at
/// index <= n equal to a lower pair at index > m.
HParams cancel_pairs(const HParams& h, double tol = 1e-12);

/// Ready-made parameter blocks for the classical identities used as test
/// oracles throughout.
namespace hcat {

/// H^{1,0}_{0,1}[x | (alpha,1)] = x^alpha exp(-x)
HParams exp_identity(double alpha);

/// H^{2,0}_{0,2}[x | (nu/2,1),(-nu/2,1)] = 2 K_nu(2 sqrt(x))
HParams bessel_k_identity(double nu);

/// H^{1,1}_{1,2}[z | (0,1); (0,1),(1-beta,alpha)] = E_{alpha,beta}(-z)
HParams ml_identity(double alpha, double beta);

/// H^{1,0}_{1,1}[w | (rho,sigma); (0,1)], the time-domain side of the
/// Laplace pair with s^{-rho} exp(-z s^sigma)
HParams laplace_exp_identity(double rho, double sigma);

} // namespace hcat

} // namespace fracdiff
