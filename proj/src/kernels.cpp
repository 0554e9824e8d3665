#include "fracdiff/kernels.hpp"

#include <cmath>
#include <limits>

#include "fracdiff/quad.hpp"
#include "fracdiff/special.hpp"

namespace fracdiff {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double rgamma_real(double x) {
    SignedLogGamma g = log_gamma_signed(x);
    if (g.sign == 0) return 0.0;
    return g.sign * std::exp(-g.log_abs);
}

// first asymptotic index j >= 1 with 1/Gamma(b2 - j beta) != 0
int first_tail_index(double beta, double b2) {
    for (int j = 1; j <= 16; ++j) {
        double arg = b2 - j * beta;
        if (!(arg <= 0.5 && std::abs(arg - std::nearbyint(arg)) < 1e-9)) return j;
    }
    return 17;
}

// int_0^inf E_{beta,b2}(-eta k^alpha t^beta) dk: adaptive head up to the
// deep-asymptotic point, then the term-wise integrated tail series
double ml_cosine_at_zero(const KernelSpec& s, double b2, double t, double tol) {
    const double a = s.alpha, b = s.beta;
    const double c = s.eta * std::pow(t, b);
    if (b == 1.0 && b2 == 1.0) {
        // plain exponential envelope
        double K = std::pow(37.0 / c, 1.0 / a);
        auto g = [&](double k) { return std::exp(-c * std::pow(k, a)); };
        return quad::adaptive(g, 0.0, K, 0.1 * tol * K);
    }
    const int j0 = first_tail_index(b, b2);
    if (j0 * a <= 1.0 + 1e-12)
        throw convergence_error("green function diverges at x = 0 for this regime");
    double U0 = 40.0;
    if (b > 1.0) {
        // oscillatory part of E decays like exp(u^{1/b} cos(pi/b))
        double damp = std::abs(std::cos(kPi / b));
        if (damp < 1e-3)
            throw convergence_error("x = 0 evaluation unavailable as beta -> 2");
        U0 = std::max(U0, std::pow(37.0 / damp, b));
        if (U0 > 1e7)
            throw convergence_error("x = 0 evaluation unavailable as beta -> 2");
    }
    const double K = std::pow(U0 / c, 1.0 / a);
    auto g = [&](double k) {
        return mittag_leffler_real(b, b2, -c * std::pow(k, a));
    };
    double head = quad::adaptive(g, 0.0, K, 0.05 * tol * std::max(1.0, K));
    double tail = 0.0;
    double sj = 1.0; // (-1)^{j+1}
    for (int j = 1; j <= 40; ++j) {
        double rg = rgamma_real(b2 - j * b);
        if (rg != 0.0) {
            double term = sj * rg * std::pow(c, -double(j)) *
                          std::pow(K, 1.0 - j * a) / (j * a - 1.0);
            tail += term;
            if (std::abs(term) < 1e-4 * tol * std::max(1.0, std::abs(head + tail)) && j > j0)
                break;
        }
        sj = -sj;
    }
    return head + tail;
}

double green_ml(const KernelSpec& s, double b2, double x, double t, double tol) {
    if (!(t > 0.0))
        throw std::invalid_argument("green function: t must be > 0");
    const double c = s.eta * std::pow(t, s.beta);
    const double ax = std::abs(x);
    if (ax == 0.0) return ml_cosine_at_zero(s, b2, t, tol) / kPi;
    auto g = [&](double k) {
        return mittag_leffler_real(s.beta, b2, -c * std::pow(k, s.alpha));
    };
    quad::CosTransformOptions opt;
    opt.tol = tol;
    return quad::cos_transform_decaying(g, ax, opt) / kPi;
}

} // namespace

double similarity_scale(const KernelSpec& spec, double t) {
    if (!(t > 0.0))
        throw std::invalid_argument("similarity_scale: t must be > 0");
    return std::pow(spec.eta * std::pow(t, spec.beta), 1.0 / spec.alpha);
}

HParams fundamental_h(const KernelSpec& spec) {
    const double a = spec.alpha, b = spec.beta;
    return cancel_pairs(HParams(2, 1,
                                {{1.0, 1.0 / a}, {1.0, b / a}, {1.0, 0.5}},
                                {{1.0, 1.0}, {1.0, 1.0 / a}, {1.0, 0.5}}));
}

HParams g1_h(const KernelSpec& spec) { return fundamental_h(spec); }

HParams g2_h(const KernelSpec& spec) {
    const double a = spec.alpha, b = spec.beta;
    return cancel_pairs(HParams(2, 1,
                                {{1.0, 1.0 / a}, {b, b / a}, {1.0, 0.5}},
                                {{1.0, 1.0}, {1.0, 1.0 / a}, {1.0, 0.5}}));
}

double green_g1(const KernelSpec& spec, double x, double t, double tol) {
    return green_ml(spec, 1.0, x, t, tol);
}

double green_g2(const KernelSpec& spec, double x, double t, double tol) {
    return green_ml(spec, spec.beta, x, t, tol);
}

double fundamental_solution(const KernelSpec& spec, double x, double t, Route route,
                            double tol) {
    return fundamental_solution_ex(spec, x, t, route, tol).value;
}

FsEval fundamental_solution_ex(const KernelSpec& spec, double x, double t, Route route,
                               double tol) {
    if (!(t > 0.0))
        throw std::invalid_argument("fundamental_solution: t must be > 0");
    const double scale = similarity_scale(spec, t);
    const double X = std::abs(x) / scale;
    const double pref = 1.0 / (spec.alpha * scale);

    auto by_series = [&](bool small) -> FsEval {
        HParams h = fundamental_h(spec);
        EvalResult r = small ? eval_series_small(h, X, 600, -1.0)
                             : eval_series_large(h, X, 600, -1.0);
        double value = pref * r.value;
        if (!r.converged || r.err_est * pref > tol * std::max(std::abs(value), 1e-300))
            throw region_error("fundamental_solution: series route outside its region");
        return {value, r.err_est * pref,
                small ? Route::series_small : Route::series_large};
    };

    switch (route) {
    case Route::series_small:
        return by_series(true);
    case Route::series_large:
        return by_series(false);
    case Route::contour: {
        if (X == 0.0)
            throw region_error("fundamental_solution: contour route needs x != 0");
        EvalResult r = eval_contour(fundamental_h(spec), X);
        if (!r.converged)
            throw convergence_error("fundamental_solution: contour route failed");
        return {pref * r.value / X, r.err_est * pref / X, Route::contour};
    }
    case Route::fourier:
        return {green_g1(spec, x, t, std::min(tol, 1e-9)), std::min(tol, 1e-9),
                Route::fourier};
    case Route::automatic:
        break;
    }

    HParams h = fundamental_h(spec);
    // deep-tail values far below the kernel's natural amplitude are
    // accepted on an absolute floor: no route can certify 1e-300 relatively
    const double floor_abs = 1e-15 * pref;
    const bool small_first = X <= 2.5;
    for (int pass = 0; pass < 2; ++pass) {
        bool small = small_first == (pass == 0);
        try {
            EvalResult r = small ? eval_series_small(h, X, 600, -1.0)
                                 : eval_series_large(h, X, 600, -1.0);
            double value = pref * r.value;
            if (r.err_est * pref <= std::max(tol * std::abs(value), floor_abs))
                return {value, r.err_est * pref,
                        small ? Route::series_small : Route::series_large};
        } catch (const std::domain_error&) {
            // colliding poles or no family on this side: next route
        }
    }
    if (X > 0.0) {
        try {
            EvalResult r = eval_contour(h, X);
            double value = pref * r.value / X;
            if (r.err_est * pref / X <= std::max(tol * std::abs(value), floor_abs))
                return {value, r.err_est * pref / X, Route::contour};
        } catch (const convergence_error&) {
        }
    }
    return {green_g1(spec, x, t, std::min(tol, 1e-9)), std::min(tol, 1e-9),
            Route::fourier};
}

SmallXBehavior small_x_behavior(const KernelSpec& spec, double t) {
    if (std::abs(spec.alpha - 1.0) < 1e-9)
        throw region_error("small_x_behavior: alpha = 1 is the regime boundary");
    const double scale = similarity_scale(spec, t);
    HParams h = fundamental_h(spec);
    double cA = residue_power_coefficient(h, true, 1.0);
    double cB = residue_power_coefficient(h, true, spec.alpha);
    double A = cA / (spec.alpha * scale);
    double B = cB / (spec.alpha * std::pow(scale, spec.alpha));
    return {A, B};
}

TailBehavior tail_behavior(const KernelSpec& spec, double t) {
    HParams h = fundamental_h(spec);
    if (h.n == 0) return {false, 0.0, 0.0};
    const double scale = similarity_scale(spec, t);
    for (int k = 0; k <= 8; ++k) {
        // large-route poles of the single upper-numerator family
        double off = 1.0 - h.upper[0].first;
        double coef = h.upper[0].second;
        double e = -(off + k) / coef; // z-power
        double c = residue_power_coefficient(h, false, e);
        if (std::abs(c) > 1e-280) {
            // N ~ c X^{e-1} / (alpha scale) = C |x|^{e-1}
            double expo = e - 1.0;
            double C = c / (spec.alpha * std::pow(scale, e));
            return {true, C, expo};
        }
    }
    return {false, 0.0, 0.0};
}

} // namespace fracdiff
