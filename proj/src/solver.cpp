#include "fracdiff/solver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "fracdiff/fft.hpp"
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
    double jj = (j <= n / 2) ? double(j) : double(j) - double(n);
    return 2.0 * kPi * jj / (double(n) * dx);
}

// E_{beta,b2}(-eta |k_j|^alpha w) for every padded mode, cached over the
// symmetric |k| pairs; the kmax cutoff is applied by the caller
std::vector<double> ml_multipliers(const KernelSpec& s, double b2, double w,
                                   std::size_t n_pad, double dx) {
    std::vector<double> m(n_pad, 0.0);
    for (std::size_t j = 0; j <= n_pad / 2; ++j) {
        double k = std::abs(wavenumber(j, n_pad, dx));
        double v = (w == 0.0) ? mittag_leffler_real(s.beta, b2, 0.0)
                              : mittag_leffler_real(s.beta, b2,
                                                    -s.eta * std::pow(k, s.alpha) * w);
        m[j] = v;
        if (j > 0 && j < n_pad / 2) m[n_pad - j] = v;
    }
    return m;
}

} // namespace

SampledField solve(const KernelSpec& spec, const SampledField& f,
                   const SampledField* g, const SourceTerm* phi, double t,
                   const SolveConfig& cfg) {
    if (!(t > 0.0))
        throw std::invalid_argument("solve: t must be > 0");
    if (f.boundary_ratio() > f.boundary_floor)
        throw std::domain_error("solve: initial data violates the boundary floor");
    if (g) {
        if (!(spec.beta > 1.0))
            throw std::domain_error(
                "solve: second initial condition only enters for 1 < beta <= 2");
        if (g->size() != f.size() || g->dx != f.dx || g->x0 != f.x0)
            throw std::invalid_argument("solve: f and g must share one grid");
    }

    const std::size_t n = f.size();
    const std::size_t n_pad = next_pow2(std::max(4 * n, std::size_t(cfg.nk)));
    const double beta = spec.beta;

    cvec fh = pad_and_fft(f, n_pad);
    std::vector<double> e1 = ml_multipliers(spec, 1.0, std::pow(t, beta), n_pad, f.dx);

    // truncation estimate on the propagated spectrum |f^ E|: the modes
    // beyond kmax (or, when nothing is cut, the top octave) must sit below
    // tol relative to the peak
    double peak = 0.0, cut = 0.0;
    for (std::size_t j = 0; j < n_pad; ++j) {
        double k = std::abs(wavenumber(j, n_pad, f.dx));
        double a = std::abs(fh[j] * e1[j]);
        peak = std::max(peak, a);
        std::size_t jj = (j <= n_pad / 2) ? j : n_pad - j;
        if (k > cfg.kmax || jj > (7 * n_pad) / 16) cut = std::max(cut, a);
    }
    if (peak > 0.0 && cut > cfg.tol * peak)
        throw convergence_error("solve: spectral truncation above tol "
                                "(raise kmax/nk or widen the grid)");

    cvec acc(n_pad);
    for (std::size_t j = 0; j < n_pad; ++j) {
        double k = std::abs(wavenumber(j, n_pad, f.dx));
        acc[j] = (k <= cfg.kmax) ? fh[j] * e1[j] : 0.0;
    }

    if (g) {
        cvec gh = pad_and_fft(*g, n_pad);
        std::vector<double> e2 = ml_multipliers(spec, 2.0, std::pow(t, beta), n_pad, f.dx);
        for (std::size_t j = 0; j < n_pad; ++j) {
            double k = std::abs(wavenumber(j, n_pad, f.dx));
            if (k <= cfg.kmax) acc[j] += t * gh[j] * e2[j];
        }
    }

    if (phi && phi->evaluator) {
        // graded mesh xi_i = t (i/n)^{1/beta}; per cell the xi^{beta-1}
        // weight integrates exactly against a linear interpolant of the
        // smooth spectral factor
        const int nt = cfg.n_tau;
        std::vector<double> xi(std::size_t(nt) + 1);
        for (int i = 0; i <= nt; ++i)
            xi[std::size_t(i)] = t * std::pow(double(i) / nt, 1.0 / beta);
        cvec prev_s;
        for (int i = 0; i <= nt; ++i) {
            SampledField slice(f.x0, f.dx, std::vector<double>(n, 0.0));
            for (std::size_t ii = 0; ii < n; ++ii)
                slice.values[ii] = phi->evaluator(slice.x(ii), t - xi[std::size_t(i)]);
            cvec ph = pad_and_fft(slice, n_pad);
            std::vector<double> eb = ml_multipliers(
                spec, beta, std::pow(xi[std::size_t(i)], beta), n_pad, f.dx);
            cvec s(n_pad);
            for (std::size_t j = 0; j < n_pad; ++j) {
                double k = std::abs(wavenumber(j, n_pad, f.dx));
                s[j] = (k <= cfg.kmax) ? ph[j] * eb[j] : 0.0;
            }
            if (i > 0) {
                double a = xi[std::size_t(i) - 1], b = xi[std::size_t(i)];
                double i0 = (std::pow(b, beta) - std::pow(a, beta)) / beta;
                double i1 = (std::pow(b, beta + 1.0) - std::pow(a, beta + 1.0)) /
                            (beta + 1.0);
                double d = b - a;
                double w_prev = (d > 0.0) ? i0 - (i1 - a * i0) / d : 0.5 * i0;
                double w_cur = (d > 0.0) ? (i1 - a * i0) / d : 0.5 * i0;
                for (std::size_t j = 0; j < n_pad; ++j)
                    acc[j] += w_prev * prev_s[j] + w_cur * s[j];
            }
            prev_s = std::move(s);
        }
    }

    fft_inplace(acc, true);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = acc[i].real();
    return SampledField(f.x0, f.dx, std::move(out));
}

double fourier_symbol_check(const KernelSpec& spec, double k, double t, int steps) {
    if (!(t > 0.0))
        throw std::invalid_argument("fourier_symbol_check: t must be > 0");
    if (steps < 8)
        throw std::invalid_argument("fourier_symbol_check: need steps >= 8");
    const double lam = spec.eta * std::pow(std::abs(k), spec.alpha);
    const double beta = spec.beta;
    if (lam == 0.0) return 0.0; // N^ == 1 identically

    auto nhat = [&](double s) {
        return (s <= 0.0) ? 1.0
                          : mittag_leffler_real(beta, 1.0, -lam * std::pow(s, beta));
    };

    if (beta == 1.0) {
        double h = t / steps;
        double worst = 0.0;
        for (int i = 2; i + 2 <= steps; ++i) {
            double s = i * h;
            double d1 = (nhat(s + 0.5 * h) - nhat(s - 0.5 * h)) / h;
            double d2 = (nhat(s + h) - nhat(s - h)) / (2.0 * h);
            double deriv = (4.0 * d1 - d2) / 3.0;
            worst = std::max(worst, std::abs(deriv + lam * nhat(s)));
        }
        return worst;
    }
    if (beta > 1.0)
        throw std::domain_error("fourier_symbol_check: L1 residual covers beta <= 1");

    const double dt = t / steps;
    const double c0 = std::pow(dt, -beta) / std::tgamma(2.0 - beta);
    std::vector<double> u(std::size_t(steps) + 1), w(std::size_t(steps) + 1);
    for (int i = 0; i <= steps; ++i) u[std::size_t(i)] = nhat(i * dt);
    for (int j = 0; j <= steps; ++j)
        w[std::size_t(j)] = std::pow(double(j + 1), 1.0 - beta) -
                            std::pow(double(j), 1.0 - beta);
    double worst = 0.0;
    for (int nstep = 1; nstep <= steps; ++nstep) {
        if (nstep * dt < 0.5 * t) continue;
        double acc = 0.0;
        for (int j = 0; j < nstep; ++j)
            acc += w[std::size_t(j)] *
                   (u[std::size_t(nstep - j)] - u[std::size_t(nstep - j - 1)]);
        worst = std::max(worst, std::abs(c0 * acc + lam * u[std::size_t(nstep)]));
    }
    return worst;
}

} // namespace fracdiff
