#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "fracdiff/field.hpp"
#include "fracdiff/kernels.hpp"

// Independent numerical machinery used to validate the analytic routes:
// spectral Weyl operator, L1 Caputo stepper, Talbot inversion, and a
// brute-force stable-density evaluator.

namespace fracdiff {

struct WeylDiagnostics {
    double tail_energy_fraction = 0.0;
    bool aliasing_warning = false;
};

/// Fourier-multiplier form of the Weyl operator: inverse transform of
/// -|k|^mu f^(k) on the padded periodic embedding. Fills *diag (when
/// given) with an aliasing warning if the spectral tail holds more than
/// 1e-8 of the energy.
SampledField weyl_apply(double mu, const SampledField& field,
                        WeylDiagnostics* diag = nullptr);

/// State of one L1-Caputo march: fixed step, target count, and the full
/// spectral history the nonlocal memory needs. Single-writer; separate
/// plans are independent.
class TimeStepPlan {
  public:
    TimeStepPlan(double dt, int steps);

    double dt() const { return dt_; }
    int steps() const { return steps_; }
    int completed() const { return completed_; }
    double horizon() const { return dt_ * steps_; }

  private:
    double dt_;
    int steps_;
    int completed_ = 0;
    std::size_t padded_n_ = 0;
    double dx_ = 0.0;
    double x0_ = 0.0;
    std::size_t field_n_ = 0;
    std::vector<std::vector<std::complex<double>>> history_hat_;

    friend SampledField caputo_l1_step(const KernelSpec&, TimeStepPlan&,
                                       const SampledField&, const SourceTerm*);
};

/// One implicit L1 step of  d^beta N/dt^beta = eta D_x^alpha N + phi,
/// 0 < beta <= 1, with the spectral Weyl operator on the padded embedding.
/// `field` must be the plan's current state (history-mismatch error
/// otherwise); phi may be null.
SampledField caputo_l1_step(const KernelSpec& spec, TimeStepPlan& plan,
                            const SampledField& field, const SourceTerm* phi);

/// March `plan.steps()` L1 steps from the initial field.
SampledField caputo_l1_evolve(const KernelSpec& spec, TimeStepPlan& plan,
                              const SampledField& initial, const SourceTerm* phi);

/// Scalar k-mode reduction: L1 solve of d^beta y/dt^beta = -lambda y,
/// y(0) = 1, returning y(t). The discrete counterpart of
/// E_{beta,1}(-lambda t^beta).
double caputo_l1_scalar(double beta, double lambda, double t, int steps);

/// Fixed-contour Talbot quadrature of the Bromwich integral. Runs at
/// `nodes` and 2*nodes; a spread above 1e-6 relative raises
/// convergence_error (oscillation / analyticity violation). The default
/// sits at the double-precision optimum: the contour scale grows like
/// exp(2M/5), so large node counts amplify roundoff instead of helping.
double talbot_invert(const std::function<std::complex<double>(std::complex<double>)>& F,
                     double t, int nodes = 24);

/// Symmetric alpha-stable density (1/pi) int_0^inf cos(kx) e^{-scale k^alpha} dk
/// by direct oscillatory quadrature, switching to the algebraic tail series
/// once |x|^alpha >> scale.
double stable_density(double alpha, double scale, double x);

/// Riemann-Liouville fractional integral 0D_t^{-nu} f at time t by
/// quadrature with the endpoint power absorbed exactly.
double rl_fractional_integral(const std::function<double(double)>& f, double nu,
                              double t);

} // namespace fracdiff
