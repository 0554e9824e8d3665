#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fracdiff/moments.hpp"

using namespace fracdiff;

TEST_CASE("moment_formula limits and pinned values") {
    KernelSpec gauss(2.0, 1.0, 1.0);
    // delta -> 0: total mass
    CHECK(moment_formula(gauss, MomentQuery(0.0, gauss), 1.0) == 1.0);
    CHECK(std::abs(moment_formula(gauss, MomentQuery(1e-6, gauss), 1.0) - 1.0) < 1e-4);

    // E|x| of the heat kernel: 2/sqrt(pi)
    CHECK(std::abs(moment_formula(gauss, MomentQuery(1.0, gauss), 1.0) -
                   2.0 / std::sqrt(M_PI)) < 1e-14);

    // (delta, alpha) -> 2: the linear-time law 2 eta t^beta / Gamma(1+beta)
    for (double beta : {0.5, 0.8, 1.0}) {
        for (double eta : {0.7, 1.0}) {
            for (double t : {0.5, 2.0}) {
                KernelSpec s(2.0, beta, eta);
                double want = 2.0 * eta * std::pow(t, beta) / std::tgamma(1.0 + beta);
                INFO("beta=", beta, " eta=", eta, " t=", t);
                CHECK(std::abs(moment_formula(s, MomentQuery(2.0, s), t) - want) <
                      1e-6 * want);
            }
        }
    }
}

TEST_CASE("moment admissibility") {
    KernelSpec s(1.5, 0.8, 1.0);
    CHECK(MomentQuery(0.7, s).admissible);
    CHECK_FALSE(MomentQuery(1.6, s).admissible);
    CHECK_FALSE(MomentQuery(-1.2, s).admissible);
    CHECK(MomentQuery(2.0, KernelSpec(2.0, 1.0, 1.0)).admissible);
    CHECK_THROWS_AS((void)moment_formula(s, MomentQuery(1.6, s), 1.0), region_error);
    CHECK_THROWS_AS((void)moment_quadrature(s, MomentQuery(1.6, s), 1.0), region_error);
}

TEST_CASE("moment_quadrature pinned values") {
    KernelSpec gauss(2.0, 1.0, 1.0);
    CHECK(std::abs(moment_quadrature(gauss, MomentQuery(0.0, gauss), 1.0) - 1.0) < 1e-7);
    // variance of the heat kernel: 2 eta t
    CHECK(std::abs(moment_quadrature(gauss, MomentQuery(2.0, gauss), 1.0) - 2.0) < 2e-5);
    // negative orders exercise the head substitution
    KernelSpec s(1.5, 0.8, 1.0);
    double f = moment_formula(s, MomentQuery(-0.4, s), 1.0);
    double qd = moment_quadrature(s, MomentQuery(-0.4, s), 1.0);
    CHECK(std::abs(qd - f) < 2e-5 * std::abs(f));
}

TEST_CASE("formula vs quadrature across the admissible grid") {
    for (double alpha : {1.2, 1.5, 2.0}) {
        for (double beta : {0.5, 0.8, 1.0}) {
            KernelSpec s(alpha, beta, 1.0);
            for (double delta : {0.3, 0.7, 0.9 * std::min(alpha, 2.0)}) {
                MomentQuery q(delta, s);
                double f = moment_formula(s, q, 1.0);
                double g = moment_quadrature(s, q, 1.0);
                INFO("alpha=", alpha, " beta=", beta, " delta=", delta);
                CHECK(std::abs(g - f) <= 1e-5 * std::max(std::abs(f), 1e-8));
            }
        }
    }
}

TEST_CASE("time scaling of the closed-form moment") {
    KernelSpec s(1.5, 0.8, 1.3);
    for (double delta : {0.3, 0.9}) {
        MomentQuery q(delta, s);
        const double want = s.beta * delta / s.alpha;
        double prev_t = 0.5, prev_m = moment_formula(s, q, prev_t);
        for (double t : {1.0, 2.0, 4.0}) {
            double m = moment_formula(s, q, t);
            double slope = (std::log(m) - std::log(prev_m)) /
                           (std::log(t) - std::log(prev_t));
            INFO("delta=", delta, " t=", t);
            CHECK(std::abs(slope - want) < 1e-8);
            prev_t = t;
            prev_m = m;
        }
    }
}
