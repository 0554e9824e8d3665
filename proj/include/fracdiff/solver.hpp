#pragma once

#include "fracdiff/field.hpp"
#include "fracdiff/kernels.hpp"

namespace fracdiff {

/// Resolution controls of the spectral Cauchy solver.
struct SolveConfig {
    double kmax = 64.0; // wavenumber cutoff
    int nk = 1024;      // minimum spectral nodes (grid is padded to >= this)
    int n_tau = 48;     // graded nodes of the source-time convolution
    double tol = 1e-8;  // spectral truncation target

    SolveConfig() = default;
    SolveConfig(double kmax_, int nk_, int n_tau_, double tol_)
        : kmax(kmax_), nk(nk_), n_tau(n_tau_), tol(tol_) {
        if (!(kmax > 0.0))
            throw std::invalid_argument("SolveConfig: kmax must be > 0");
        if (nk < 64)
            throw std::invalid_argument("SolveConfig: need nk >= 64");
        if (n_tau < 8)
            throw std::invalid_argument("SolveConfig: need n_tau >= 8");
        if (!(tol > 0.0))
            throw std::invalid_argument("SolveConfig: tol must be > 0");
    }
};

/// Cauchy solve of  d^beta N/dt^beta = eta D_x^alpha N + phi  with
/// N(x,0) = f and (for 1 < beta <= 2) N_t(x,0) = g, by discrete Fourier
/// synthesis on a 4x zero-padded embedding:
///   N^(k,t) = f^(k) E_{beta,1}(-eta|k|^a t^b)
///           + t g^(k) E_{beta,2}(-eta|k|^a t^b)
///           + int_0^t xi^{beta-1} phi^(k,t-xi) E_{beta,beta}(-eta|k|^a xi^b) dxi,
/// the convolution on a graded mesh xi_i = t (i/n)^{1/beta} with the
/// xi^{beta-1} weight integrated exactly per cell.
///
/// g is accepted only for 1 < beta <= 2 and must share f's grid. Throws
/// std::domain_error when the boundary floor is violated and
/// convergence_error when the requested kmax truncates above cfg.tol.
SampledField solve(const KernelSpec& spec, const SampledField& f,
                   const SampledField* g, const SourceTerm* phi, double t,
                   const SolveConfig& cfg = {});

/// Residual of the L1-discretized time-fractional mode equation applied to
/// the exact symbol N^(k,t) = E_{beta,1}(-eta|k|^alpha t^beta): the largest
/// |D^beta_L1 N^ + eta|k|^alpha N^| over mesh points in [t/2, t] (the
/// startup cells carry the O(1) truncation burst of the non-smooth kernel
/// and are excluded). beta = 1 uses Richardson-refined differencing.
double fourier_symbol_check(const KernelSpec& spec, double k, double t,
                            int steps = 512);

} // namespace fracdiff
