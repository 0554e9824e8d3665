#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "fracdiff/errors.hpp"

// Small quadrature toolkit shared by the evaluation routes: fixed
// Gauss-Legendre panels, adaptive bisection, Wynn epsilon extrapolation
// for alternating tail sums, and the oscillatory cosine transform used
// by the Fourier routes.

namespace fracdiff::quad {

inline constexpr int kGaussN = 15;

struct GaussRule {
    std::array<double, kGaussN> node;
    std::array<double, kGaussN> weight;
};

// Nodes/weights of the 15-point rule on [-1,1], Newton-refined at startup.
inline const GaussRule& gauss15() {
    static const GaussRule rule = [] {
        GaussRule r{};
        const int n = kGaussN;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 60; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 1; k < n; ++k) {
                    double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            r.node[i] = x;
            r.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

template <class F>
auto gauss_panel(F&& f, double a, double b) -> decltype(f(0.0)) {
    const auto& r = gauss15();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    decltype(f(0.0)) acc{};
    for (int i = 0; i < kGaussN; ++i)
        acc += r.weight[i] * f(mid + half * r.node[i]);
    return acc * half;
}

/// Adaptive bisection built on the 15-point panel; a panel is accepted
/// when splitting it changes the result by less than its share of tol.
/// A global split budget bounds the work when the tolerance sits below
/// what double precision can resolve.
template <class F>
auto adaptive(F&& f, double a, double b, double tol, int max_depth = 40)
    -> decltype(f(0.0)) {
    using V = decltype(f(0.0));
    struct Seg {
        double a, b, tol;
        V whole;
        int depth;
    };
    V total{};
    int budget = 4000;
    std::vector<Seg> stack;
    stack.push_back({a, b, tol, gauss_panel(f, a, b), 0});
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        const double m = 0.5 * (s.a + s.b);
        V left = gauss_panel(f, s.a, m);
        V right = gauss_panel(f, m, s.b);
        V sum = left + right;
        if (std::abs(sum - s.whole) <= s.tol || s.depth >= max_depth || --budget <= 0) {
            total += sum;
        } else {
            stack.push_back({s.a, m, 0.5 * s.tol, left, s.depth + 1});
            stack.push_back({m, s.b, 0.5 * s.tol, right, s.depth + 1});
        }
    }
    return total;
}

/// Adaptive integration over [pts.front(), pts.back()] with forced
/// breakpoints at the interior pts (pole neighborhoods, kinks, ...).
template <class F>
auto adaptive_split(F&& f, const std::vector<double>& pts, double tol)
    -> decltype(f(0.0)) {
    decltype(f(0.0)) acc{};
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i + 1] > pts[i])
            acc += adaptive(f, pts[i], pts[i + 1], tol / double(pts.size() - 1));
    return acc;
}

/// Wynn epsilon limit of a sequence of partial sums. Returns the most
/// refined finite even-column entry; exact repetitions (the algorithm's
/// singular case) propagate a large sentinel that is never selected.
inline double wynn_limit(const std::vector<double>& s) {
    const std::size_t n = s.size();
    if (n == 0) return 0.0;
    if (n == 1) return s[0];
    std::vector<double> eps_prev2(n, 0.0); // epsilon_{-1} column
    std::vector<double> eps_prev = s;      // epsilon_0 column
    double best = s.back();
    for (std::size_t col = 1; col < n; ++col) {
        std::vector<double> cur(n - col);
        for (std::size_t i = 0; i + col < n; ++i) {
            double diff = eps_prev[i + 1] - eps_prev[i];
            cur[i] = (diff == 0.0) ? 1e300 : eps_prev2[i + 1] + 1.0 / diff;
        }
        if (col % 2 == 0 && !cur.empty()) {
            double cand = cur.back();
            if (std::isfinite(cand) && std::abs(cand) < 1e250) best = cand;
        }
        eps_prev2 = std::move(eps_prev);
        eps_prev = std::move(cur);
    }
    return best;
}

struct CosTransformOptions {
    double tol = 1e-11;
    int max_panels = 96;
    int min_panels = 10;
};

/// I = int_0^inf cos(k x) g(k) dk for x > 0 and smooth decaying g.
///
/// Head panel up to the first zero of the cosine, then half-period panels
/// whose alternating partial sums are passed to the epsilon algorithm.
/// Envelopes that die before the oscillation matters exit early on the
/// plain partial sum.
template <class G>
double cos_transform_decaying(G&& g, double x, const CosTransformOptions& opt = {}) {
    if (!(x > 0.0))
        throw std::invalid_argument("cos_transform_decaying: x must be > 0");
    auto integrand = [&](double k) { return g(k) * std::cos(k * x); };
    const double half = M_PI / x;
    const double k0 = 0.5 * half;
    double head = adaptive(integrand, 0.0, k0, 0.05 * opt.tol);
    std::vector<double> partial;
    partial.reserve(opt.max_panels);
    double s = head;
    double scale = std::max(std::abs(s), 1e-300);
    int tiny_run = 0;
    for (int j = 0; j < opt.max_panels; ++j) {
        const double a = k0 + j * half;
        const double b = a + half;
        double aj = adaptive(integrand, a, b, 0.02 * opt.tol);
        s += aj;
        partial.push_back(s);
        scale = std::max(scale, std::abs(s));
        if (std::abs(aj) < 0.02 * opt.tol * scale) {
            if (++tiny_run >= 2) return s;
        } else {
            tiny_run = 0;
        }
        if (j + 1 >= opt.min_panels && (j % 2) == 1) {
            double e1 = wynn_limit(partial);
            std::vector<double> drop(partial.begin(), partial.end() - 2);
            double e0 = wynn_limit(drop);
            if (std::abs(e1 - e0) < opt.tol * std::max(1.0, std::abs(e1)))
                return e1;
        }
    }
    throw convergence_error("cos_transform_decaying: oscillatory tail did not stabilize");
}

} // namespace fracdiff::quad
