#include "fracdiff/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "fracdiff/fft.hpp"
#include "fracdiff/quad.hpp"
#include "fracdiff/special.hpp"

namespace fracdiff {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
using cvec = std::vector<std::complex<double>>;

cvec pad_and_fft(const SampledField& f, std::size_t n_pad) {
    cvec a(n_pad, {0.0, 0.0});
    for (std::size_t i = 0; i < f.size(); ++i) a[i] = f.values[i];
    fft_inplace(a, false);
    return a;
}

double wavenumber(std::size_t j, std::size_t n, double dx) {
    // signed FFT frequency times 2 pi / (n dx)
    double jj = (j <= n / 2) ? double(j) : double(j) - double(n);
    return 2.0 * kPi * jj / (double(n) * dx);
}

} // namespace

SampledField weyl_apply(double mu, const SampledField& field, WeylDiagnostics* diag) {
    if (!(mu > 0.0))
        throw std::invalid_argument("weyl_apply: mu must be > 0");
    {
        // a constant is its own k = 0 mode: the -|k|^mu multiplier kills it
        double dev = 0.0;
        for (double y : field.values) dev = std::max(dev, std::abs(y - field.values[0]));
        if (dev <= 1e-14 * std::max(field.max_abs(), 1.0)) {
            if (diag) *diag = {};
            return SampledField(field.x0, field.dx,
                                std::vector<double>(field.size(), 0.0));
        }
    }
    if (field.boundary_ratio() > field.boundary_floor)
        throw std::domain_error("weyl_apply: field does not vanish at the boundary");
    const std::size_t n = field.size();
    const std::size_t n_pad = next_pow2(4 * n);
    cvec a = pad_and_fft(field, n_pad);

    if (diag) {
        double total = 0.0, tail = 0.0;
        for (std::size_t j = 0; j < n_pad; ++j) {
            double e = std::norm(a[j]);
            total += e;
            std::size_t jj = (j <= n_pad / 2) ? j : n_pad - j;
            if (jj > (3 * n_pad) / 8) tail += e;
        }
        diag->tail_energy_fraction = (total > 0.0) ? tail / total : 0.0;
        diag->aliasing_warning = diag->tail_energy_fraction > 1e-8;
    }

    for (std::size_t j = 0; j < n_pad; ++j) {
        double k = wavenumber(j, n_pad, field.dx);
        a[j] *= -std::pow(std::abs(k), mu);
    }
    fft_inplace(a, true);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i].real();
    return SampledField(field.x0, field.dx, std::move(out));
}

TimeStepPlan::TimeStepPlan(double dt, int steps) : dt_(dt), steps_(steps) {
    if (!(dt > 0.0))
        throw std::invalid_argument("TimeStepPlan: dt must be > 0");
    if (steps < 1)
        throw std::invalid_argument("TimeStepPlan: need steps >= 1");
}

SampledField caputo_l1_step(const KernelSpec& spec, TimeStepPlan& plan,
                            const SampledField& field, const SourceTerm* phi) {
    if (!(spec.beta <= 1.0))
        throw std::domain_error("caputo_l1_step: L1 scheme covers 0 < beta <= 1");
    if (plan.completed_ >= plan.steps_)
        throw std::domain_error("caputo_l1_step: plan already completed");

    const double beta = spec.beta;
    const double dt = plan.dt_;

    if (plan.completed_ == 0) {
        plan.field_n_ = field.size();
        plan.dx_ = field.dx;
        plan.x0_ = field.x0;
        plan.padded_n_ = next_pow2(4 * field.size());
        plan.history_hat_.clear();
        plan.history_hat_.push_back(pad_and_fft(field, plan.padded_n_));
    } else {
        if (field.size() != plan.field_n_ || field.dx != plan.dx_ || field.x0 != plan.x0_)
            throw std::domain_error("caputo_l1_step: field/plan history mismatch");
        // the caller must hand back the plan's current state
        cvec cur = plan.history_hat_.back();
        fft_inplace(cur, true);
        double m = std::max(field.max_abs(), 1e-300);
        for (std::size_t i = 0; i < field.size(); ++i)
            if (std::abs(cur[i].real() - field.values[i]) > 1e-9 * m)
                throw std::domain_error("caputo_l1_step: field/plan history mismatch");
    }

    const std::size_t n_pad = plan.padded_n_;
    const int nstep = plan.completed_; // steps taken so far
    const double c0 = std::pow(dt, -beta) / std::tgamma(2.0 - beta);

    // L1 weights w_j = (j+1)^{1-beta} - j^{1-beta}
    std::vector<double> w(std::size_t(nstep) + 1);
    for (int j = 0; j <= nstep; ++j)
        w[j] = std::pow(double(j + 1), 1.0 - beta) - std::pow(double(j), 1.0 - beta);

    cvec rhs(n_pad, {0.0, 0.0});
    const auto& hist = plan.history_hat_;
    // memory part: c0 * [ u^n - sum_{j=1}^{n} w_j (u^{n+1-j} - u^{n-j}) ]
    for (std::size_t jj = 0; jj < n_pad; ++jj) {
        std::complex<double> acc = hist[std::size_t(nstep)][jj];
        for (int j = 1; j <= nstep; ++j)
            acc -= w[j] * (hist[std::size_t(nstep + 1 - j)][jj] -
                           hist[std::size_t(nstep - j)][jj]);
        rhs[jj] = c0 * acc;
    }
    if (phi && phi->evaluator) {
        const double t_next = dt * (nstep + 1);
        SampledField slice(plan.x0_, plan.dx_, std::vector<double>(plan.field_n_, 0.0));
        for (std::size_t i = 0; i < plan.field_n_; ++i)
            slice.values[i] = phi->evaluator(slice.x(i), t_next);
        cvec ph = pad_and_fft(slice, n_pad);
        for (std::size_t jj = 0; jj < n_pad; ++jj) rhs[jj] += ph[jj];
    }
    cvec next(n_pad);
    for (std::size_t jj = 0; jj < n_pad; ++jj) {
        double k = wavenumber(jj, n_pad, plan.dx_);
        double lam = spec.eta * std::pow(std::abs(k), spec.alpha);
        // first-step correction: restores the 2-beta rate for nonsmooth
        // data that the plain uniform-mesh L1 scheme loses
        if (nstep == 0 && beta < 1.0) rhs[jj] -= 0.5 * lam * hist[0][jj];
        next[jj] = rhs[jj] / (c0 + lam);
    }
    plan.history_hat_.push_back(next);
    ++plan.completed_;

    fft_inplace(next, true);
    std::vector<double> out(plan.field_n_);
    for (std::size_t i = 0; i < plan.field_n_; ++i) out[i] = next[i].real();
    return SampledField(plan.x0_, plan.dx_, std::move(out));
}

SampledField caputo_l1_evolve(const KernelSpec& spec, TimeStepPlan& plan,
                              const SampledField& initial, const SourceTerm* phi) {
    SampledField cur = initial;
    while (plan.completed() < plan.steps())
        cur = caputo_l1_step(spec, plan, cur, phi);
    return cur;
}

double caputo_l1_scalar(double beta, double lambda, double t, int steps) {
    if (!(beta > 0.0 && beta <= 1.0))
        throw std::invalid_argument("caputo_l1_scalar: need 0 < beta <= 1");
    const double dt = t / steps;
    const double c0 = std::pow(dt, -beta) / std::tgamma(2.0 - beta);
    std::vector<double> w(std::size_t(steps) + 1), u;
    for (int j = 0; j <= steps; ++j)
        w[j] = std::pow(double(j + 1), 1.0 - beta) - std::pow(double(j), 1.0 - beta);
    u.reserve(std::size_t(steps) + 1);
    u.push_back(1.0);
    for (int n = 0; n < steps; ++n) {
        double acc = c0 * u[std::size_t(n)];
        for (int j = 1; j <= n; ++j)
            acc -= c0 * w[j] * (u[std::size_t(n + 1 - j)] - u[std::size_t(n - j)]);
        if (n == 0 && beta < 1.0) acc -= 0.5 * lambda * u[0]; // first-step correction
        u.push_back(acc / (c0 + lambda));
    }
    return u.back();
}

namespace {

double talbot_once(const std::function<std::complex<double>(std::complex<double>)>& F,
                   double t, int M) {
    // fixed Talbot contour in the Abate-Whitt parameterization
    using cd = std::complex<double>;
    double acc = 0.0;
    for (int k = 0; k < M; ++k) {
        cd delta, gamma;
        if (k == 0) {
            delta = cd(2.0 * M / 5.0, 0.0);
            gamma = 0.5 * std::exp(delta);
        } else {
            double c = kPi * k / M;
            double cot = std::cos(c) / std::sin(c);
            delta = cd(2.0 * kPi * k / 5.0 * cot, 2.0 * kPi * k / 5.0);
            gamma = (1.0 + cd(0.0, 1.0) * c * (1.0 + cot * cot) - cd(0.0, cot)) *
                    std::exp(delta);
        }
        acc += (gamma * F(delta / t)).real();
    }
    return 0.4 / t * acc;
}

} // namespace

double talbot_invert(const std::function<std::complex<double>(std::complex<double>)>& F,
                     double t, int nodes) {
    if (!(t > 0.0))
        throw std::invalid_argument("talbot_invert: t must be > 0");
    if (nodes < 8)
        throw std::invalid_argument("talbot_invert: need at least 8 nodes");
    double v1 = talbot_once(F, t, nodes);
    double v2 = talbot_once(F, t, 2 * nodes);
    if (std::abs(v2 - v1) > 1e-6 * std::max(1.0, std::abs(v2)))
        throw convergence_error("talbot_invert: node doubling did not stabilize");
    return v2;
}

double stable_density(double alpha, double scale, double x) {
    if (!(alpha > 0.0 && alpha <= 2.0))
        throw std::invalid_argument("stable_density: need 0 < alpha <= 2");
    if (!(scale > 0.0))
        throw std::invalid_argument("stable_density: need scale > 0");
    const double ax = std::abs(x);

    if (alpha < 1.95 && std::pow(ax, alpha) > 50.0 * scale) {
        // algebraic tail: (1/pi) sum (-1)^{n+1} Gamma(n alpha + 1)/n!
        //                  sin(n pi alpha / 2) scale^n |x|^{-n alpha - 1}
        double sum = 0.0, sgn = 1.0;
        double prev = HUGE_VAL;
        for (int n = 1; n <= 60; ++n) {
            double sp = std::sin(0.5 * n * kPi * alpha);
            double cur = sgn;
            sgn = -sgn;
            if (std::abs(sp) < 1e-12) continue; // sine zero: term absent
            double lt = std::lgamma(n * alpha + 1.0) - std::lgamma(double(n) + 1.0) +
                        n * std::log(scale) - (n * alpha + 1.0) * std::log(ax);
            double term = cur * std::exp(lt) * sp;
            if (std::abs(term) > prev) break;
            sum += term;
            prev = std::abs(term) + 1e-320;
            if (std::abs(term) < 1e-16 * std::abs(sum)) break;
        }
        return sum / kPi;
    }

    auto g = [&](double k) { return std::exp(-scale * std::pow(k, alpha)); };
    if (ax == 0.0) {
        double K = std::pow(42.0 / scale, 1.0 / alpha);
        return quad::adaptive(g, 0.0, K, 1e-13 * std::max(1.0, K)) / kPi;
    }
    quad::CosTransformOptions opt;
    opt.tol = 1e-11;
    return quad::cos_transform_decaying(g, ax, opt) / kPi;
}

double rl_fractional_integral(const std::function<double(double)>& f, double nu,
                              double t) {
    if (!(nu > 0.0))
        throw std::invalid_argument("rl_fractional_integral: need nu > 0");
    if (!(t > 0.0))
        throw std::invalid_argument("rl_fractional_integral: need t > 0");
    // (1/Gamma(nu)) int_0^t (t-u)^{nu-1} f(u) du; substituting
    // u = t(1 - w^{1/nu}) absorbs the endpoint power exactly
    auto g = [&](double w) { return f(t * (1.0 - std::pow(w, 1.0 / nu))); };
    double scale = std::max(std::abs(f(0.5 * t)), 1.0);
    double integral = quad::adaptive(g, 0.0, 1.0, 1e-12 * scale);
    return std::pow(t, nu) / (std::tgamma(nu) * nu) * integral;
}

} // namespace fracdiff
