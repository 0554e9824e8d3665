#pragma once

#include "fracdiff/fox_h.hpp"

namespace fracdiff {

/// Physical parameter triple of one space-time fractional diffusion
/// problem: space order alpha, time order beta, diffusion coefficient eta
/// (units length^alpha / time^beta).
struct KernelSpec {
    double alpha;
    double beta;
    double eta;

    KernelSpec(double a, double b, double e) : alpha(a), beta(b), eta(e) {
        if (!(a > 0.0 && a <= 2.0))
            throw std::invalid_argument("KernelSpec: need 0 < alpha <= 2");
        if (!(b > 0.0 && b <= 2.0))
            throw std::invalid_argument("KernelSpec: need 0 < beta <= 2");
        if (!(e > 0.0))
            throw std::invalid_argument("KernelSpec: need eta > 0");
    }
};

enum class Route { series_small, series_large, contour, fourier, automatic };

/// (eta t^beta)^{1/alpha}, the self-similarity length of the problem.
double similarity_scale(const KernelSpec& spec, double t);

/// H-function block of the fundamental solution (gamma pairs cancelled):
/// N(x,t) = H(X) / (alpha |x|) at X = |x| / similarity_scale.
HParams fundamental_h(const KernelSpec& spec);

/// H^{2,1}_{3,3} blocks of the two Green functions (G1 coincides with the
/// fundamental-solution block).
HParams g1_h(const KernelSpec& spec);
HParams g2_h(const KernelSpec& spec);

/// G1(x,t): Fourier-cosine synthesis of E_{beta,1}(-eta k^alpha t^beta).
/// Throws convergence_error when the k-integral cannot reach tol (for
/// instance at x = 0 where the kernel itself diverges, alpha <= 1 with
/// beta < 1).
double green_g1(const KernelSpec& spec, double x, double t, double tol = 1e-10);

/// G2(x,t): same synthesis with E_{beta,beta}.
double green_g2(const KernelSpec& spec, double x, double t, double tol = 1e-10);

/// Fundamental solution N(x,t) for delta initial data, by the requested
/// route. Series routes throw region_error outside their convergence
/// region; the contour route needs x != 0; automatic picks the cheapest
/// route meeting tol.
double fundamental_solution(const KernelSpec& spec, double x, double t, Route route,
                            double tol = 1e-8);

/// Same evaluation with the truncation estimate and the route that
/// actually produced the value.
struct FsEval {
    double value;
    double err_est;
    Route route_used;
};
FsEval fundamental_solution_ex(const KernelSpec& spec, double x, double t, Route route,
                               double tol = 1e-8);

/// Leading small-x structure N(x,t) ~ A + B |x|^{alpha-1}: the two
/// coefficients, from the lowest residues of the series expansion.
/// alpha == 1 is the regime boundary and is rejected.
struct SmallXBehavior {
    double A;
    double B;
};
SmallXBehavior small_x_behavior(const KernelSpec& spec, double t);

/// Heavy-tail structure N(x,t) ~ coefficient * |x|^{exponent} from the
/// first surviving large-argument residue. present == false when every
/// algebraic tail term vanishes (the alpha = 2 exponential regime).
struct TailBehavior {
    bool present;
    double coefficient;
    double exponent;
};
TailBehavior tail_behavior(const KernelSpec& spec, double t);

} // namespace fracdiff
