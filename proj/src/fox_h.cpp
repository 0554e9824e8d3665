#include "fracdiff/fox_h.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracdiff/quad.hpp"

namespace fracdiff {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool near_nonpositive_integer(double x, double tol) {
    if (x > 0.5) return false;
    return std::abs(x - std::nearbyint(x)) < tol;
}

} // namespace

HParams::HParams(int m_, int n_, std::vector<std::pair<double, double>> upper_,
                 std::vector<std::pair<double, double>> lower_)
    : m(m_), n(n_), upper(std::move(upper_)), lower(std::move(lower_)) {
    if (n < 0 || n > p())
        throw std::invalid_argument("HParams: need 0 <= n <= p");
    if (m < 1 || m > q())
        throw std::invalid_argument("HParams: need 1 <= m <= q");
    for (auto& [a, A] : upper) {
        (void)a;
        if (!(A > 0.0)) throw std::invalid_argument("HParams: A_j must be > 0");
    }
    for (auto& [b, B] : lower) {
        (void)b;
        if (!(B > 0.0)) throw std::invalid_argument("HParams: B_j must be > 0");
    }
    // pole separation, Eq-level constraint between the two numerator families
    for (int i = 0; i < n; ++i) {
        const auto [a, A] = upper[i];
        for (int j = 0; j < m; ++j) {
            const auto [b, B] = lower[j];
            for (int k = 0; k <= 64; ++k)
                for (int l = 0; l <= 64; ++l)
                    if (std::abs(A * (b + k) - B * (a - l - 1)) < 1e-9)
                        throw std::invalid_argument(
                            "HParams: pole-separation condition violated");
        }
    }
}

Strip contour_strip(const HParams& h) {
    double left = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < h.m; ++j)
        left = std::max(left, -h.lower[j].first / h.lower[j].second);
    double right = std::numeric_limits<double>::infinity();
    for (int i = 0; i < h.n; ++i)
        right = std::min(right, (1.0 - h.upper[i].first) / h.upper[i].second);
    return {left, right};
}

double theta_decay_rate(const HParams& h) {
    double t = 0.0;
    for (int i = 0; i < h.p(); ++i) t += (i < h.n ? 1.0 : -1.0) * h.upper[i].second;
    for (int j = 0; j < h.q(); ++j) t += (j < h.m ? 1.0 : -1.0) * h.lower[j].second;
    return t;
}

ContourSpec::ContourSpec(const HParams& h, double gamma_, double half_height_, int nodes_)
    : gamma(gamma_), half_height(half_height_), nodes(nodes_) {
    if (!(half_height > 0.0))
        throw std::invalid_argument("ContourSpec: half_height must be > 0");
    if (nodes < 16)
        throw std::invalid_argument("ContourSpec: need at least 16 nodes");
    Strip s = contour_strip(h);
    if (!(gamma > s.left && gamma < s.right))
        throw std::invalid_argument(
            "ContourSpec: abscissa outside the pole-free strip");
}

cplx theta_log(const HParams& h, cplx xi) {
    auto factor_log = [&](double off, double coef, bool numerator,
                          const char* name, int j) -> cplx {
        cplx arg = off + coef * xi;
        if (std::abs(arg.imag()) < 1e-12 && near_nonpositive_integer(arg.real(), 1e-12)) {
            if (numerator) {
                std::ostringstream os;
                os << "theta: pole of " << name << " factor j=" << (j + 1)
                   << " at xi = (" << xi.real() << "," << xi.imag() << ")";
                throw pole_error(os.str());
            }
            return cplx(-std::numeric_limits<double>::infinity(), 0.0);
        }
        return log_gamma(arg);
    };
    cplx acc{};
    for (int j = 0; j < h.q(); ++j) {
        const auto [b, B] = h.lower[j];
        if (j < h.m)
            acc += factor_log(b, B, true, "lower-numerator", j);
        else
            acc -= factor_log(1.0 - b, -B, false, "lower-denominator", j);
    }
    for (int i = 0; i < h.p(); ++i) {
        const auto [a, A] = h.upper[i];
        if (i < h.n)
            acc += factor_log(1.0 - a, -A, true, "upper-numerator", i);
        else
            acc -= factor_log(a, A, false, "upper-denominator", i);
    }
    return acc;
}

cplx theta(const HParams& h, cplx xi) {
    cplx lg = theta_log(h, xi);
    if (lg.real() == -std::numeric_limits<double>::infinity()) return {0.0, 0.0};
    return std::exp(lg);
}

namespace {

// ---- contour route ----

struct ContourEval {
    double value;
    double err_est;
    int nodes;
};

// (1/pi) Re int_0^T Theta(gamma + it) z^{-gamma-it} dt over [t0, t1]
double contour_chunk(const HParams& h, double z, double gamma, double t0, double t1,
                     double abs_tol) {
    const double lz = std::log(z);
    auto f = [&](double t) -> cplx {
        cplx xi(gamma, t);
        return std::exp(theta_log(h, xi) - xi * lz);
    };
    cplx v = quad::adaptive(f, t0, t1, abs_tol);
    return v.real() / kPi;
}

ContourEval contour_adaptive_height(const HParams& h, double z, double gamma,
                                    double t_start, double t_cap) {
    const double lz = std::log(z);
    double T = t_start;
    double f0 = std::abs(std::exp(theta_log(h, cplx(gamma, 0.25)) - cplx(gamma, 0.25) * lz));
    double value = contour_chunk(h, z, gamma, 0.0, T, std::max(1e-250, 1e-13 * f0));
    double scale = std::max(std::abs(value), 1e-30);
    double change = std::numeric_limits<double>::infinity();
    int chunks = 1;
    while (T < t_cap) {
        double Tn = std::min(2.0 * T, t_cap);
        double inc = contour_chunk(h, z, gamma, T, Tn, 1e-13 * scale);
        value += inc;
        scale = std::max(scale, std::abs(value));
        T = Tn;
        ++chunks;
        change = std::abs(inc);
        if (change < 1e-9 * scale) break;
    }
    // exponential tail bound from the decay index
    double rate = 0.5 * kPi * theta_decay_rate(h);
    double ftail = std::abs(std::exp(theta_log(h, cplx(gamma, T)) - cplx(gamma, T) * lz));
    double err = change + ftail / std::max(rate, 1e-3) / kPi;
    return {value, err, chunks * 64};
}

// ---- residue series ----

struct PolePoint {
    double xi;       // pole location
    double exponent; // power of z carried by the residue
    int family;      // index into the numerator family list
    int k;           // pole index within the family
};

struct FamilyRef {
    double off;  // b_j or 1 - a_j
    double coef; // B_j or A_j
};

// Theta with one numerator factor removed, at a real residue point, in
// signed-log form. Coinciding numerator and denominator gamma poles are
// paired into their finite limit
//   Gamma(arg_n)/Gamma(arg_d) -> (-1)^{Mn+Md} (Md!/Mn!) (c_d/c_n),
// where arg = arg(xi0) + c (xi - xi0) and M is the pole index. A leftover
// denominator pole drives the value to zero; a leftover numerator pole
// marks a genuine higher-order pole of the integrand.
struct SignedLogTheta {
    double log_abs;
    int sign;              // 0 => value is exactly zero
    bool nearly_cancelled; // a denominator factor close (not equal) to a pole
    bool numerator_pole;   // unpaired numerator pole: residue is not simple
};

SignedLogTheta theta_log_signed_without(const HParams& h, bool small_route,
                                        int skip_family, double xi) {
    SignedLogTheta out{0.0, 1, false, false};
    struct PoleFactor {
        int M;
        double coef;
    };
    std::vector<PoleFactor> num_poles, den_poles;
    auto absorb = [&](double arg, double coef, bool numerator) {
        if (near_nonpositive_integer(arg, 1e-6)) {
            int M = int(std::nearbyint(-arg));
            (numerator ? num_poles : den_poles).push_back({M, coef});
            return;
        }
        SignedLogGamma g = log_gamma_signed(arg);
        if (numerator) {
            out.log_abs += g.log_abs;
        } else {
            if (near_nonpositive_integer(arg, 1e-4)) out.nearly_cancelled = true;
            out.log_abs -= g.log_abs;
        }
        out.sign *= g.sign;
    };
    for (int j = 0; j < h.q(); ++j) {
        const auto [b, B] = h.lower[j];
        if (j < h.m) {
            if (small_route && j == skip_family) continue;
            absorb(b + B * xi, B, true);
        } else {
            absorb(1.0 - b - B * xi, -B, false);
        }
    }
    for (int i = 0; i < h.p(); ++i) {
        const auto [a, A] = h.upper[i];
        if (i < h.n) {
            if (!small_route && i == skip_family) continue;
            absorb(1.0 - a - A * xi, -A, true);
        } else {
            absorb(a + A * xi, A, false);
        }
    }
    while (!num_poles.empty() && !den_poles.empty()) {
        PoleFactor pn = num_poles.back();
        PoleFactor pd = den_poles.back();
        num_poles.pop_back();
        den_poles.pop_back();
        out.log_abs += std::lgamma(double(pd.M) + 1.0) - std::lgamma(double(pn.M) + 1.0) +
                       std::log(std::abs(pd.coef / pn.coef));
        int s = ((pn.M + pd.M) % 2 == 0) ? 1 : -1;
        if (pd.coef / pn.coef < 0.0) s = -s;
        out.sign *= s;
    }
    if (!num_poles.empty()) out.numerator_pole = true;
    if (!den_poles.empty()) out.sign = 0;
    return out;
}

// Pole of another numerator family within 1e-8 of xi0; used so that each
// coinciding residue point is claimed by exactly one family.
bool claimed_by_earlier_family(const std::vector<FamilyRef>& fam, int family,
                               double xi, bool small_route) {
    for (int j = 0; j < family; ++j) {
        double k = small_route ? (-xi * fam[j].coef - fam[j].off)
                               : (xi * fam[j].coef - fam[j].off);
        if (k < -0.5) continue;
        double kr = std::nearbyint(k);
        double xi_j = small_route ? -(fam[j].off + kr) / fam[j].coef
                                  : (fam[j].off + kr) / fam[j].coef;
        if (kr >= 0.0 && std::abs(xi_j - xi) < 1e-8) return true;
    }
    return false;
}

EvalResult residue_series(const HParams& h, double z, int terms, double power_shift,
                          bool small_route) {
    if (!(z >= 0.0))
        throw std::invalid_argument("eval_series: z must be >= 0");
    const int nfam = small_route ? h.m : h.n;
    if (nfam == 0)
        throw region_error("eval_series: no numerator family on this side");

    std::vector<FamilyRef> fam(nfam);
    for (int j = 0; j < nfam; ++j) {
        if (small_route)
            fam[j] = {h.lower[j].first, h.lower[j].second};
        else
            fam[j] = {1.0 - h.upper[j].first, h.upper[j].second};
    }

    std::vector<PolePoint> poles;
    poles.reserve(std::size_t(terms) + 8);
    for (int j = 0; j < nfam; ++j)
        for (int k = 0; k < terms; ++k) {
            double xi = small_route ? -(fam[j].off + k) / fam[j].coef
                                    : (fam[j].off + k) / fam[j].coef;
            double e = small_route ? (fam[j].off + k) / fam[j].coef
                                   : -(fam[j].off + k) / fam[j].coef;
            poles.push_back({xi, e, j, k});
        }
    std::sort(poles.begin(), poles.end(),
              [](const PolePoint& a, const PolePoint& b) {
                  return std::abs(a.exponent) < std::abs(b.exponent);
              });
    if (int(poles.size()) > terms) poles.resize(std::size_t(terms));

    if (z == 0.0) {
        // only the zero-power residues survive; the result is exact
        double sum = 0.0;
        int used = 0;
        for (const PolePoint& pp : poles) {
            double e = pp.exponent + power_shift;
            if (e < -1e-12)
                throw region_error("eval_series: divergent power at z = 0");
            if (e > 1e-12) continue;
            if (claimed_by_earlier_family(fam, pp.family, pp.xi, small_route)) continue;
            SignedLogTheta th = theta_log_signed_without(h, small_route, pp.family, pp.xi);
            if (th.numerator_pole)
                throw pole_error("eval_series: non-simple pole in the residue series");
            ++used;
            if (th.sign == 0) continue;
            double lt = th.log_abs - std::lgamma(double(pp.k) + 1.0) -
                        std::log(fam[pp.family].coef);
            sum += th.sign * ((pp.k % 2 == 0) ? 1 : -1) * std::exp(lt);
        }
        return {sum, 0.0, used, true};
    }

    const double lz = std::log(z);
    double sum = 0.0;
    double sum_at_min = 0.0;
    double min_term = std::numeric_limits<double>::infinity();
    double prev = std::numeric_limits<double>::infinity();
    double peak = 0.0; // largest intermediate term: cancellation floor
    int used = 0;
    int quiet = 0;
    int growing = 0;
    bool converged = false;
    double last_controlled = std::numeric_limits<double>::infinity();

    for (const PolePoint& pp : poles) {
        ++used;
        if (claimed_by_earlier_family(fam, pp.family, pp.xi, small_route)) continue;
        double e = pp.exponent + power_shift;
        SignedLogTheta th = theta_log_signed_without(h, small_route, pp.family, pp.xi);
        if (th.numerator_pole)
            throw pole_error("eval_series: non-simple pole in the residue series");
        double term = 0.0;
        double at = 0.0;
        if (th.sign != 0) {
            double lt = th.log_abs + e * lz - std::lgamma(double(pp.k) + 1.0) -
                        std::log(fam[pp.family].coef);
            if (lt > 700.0) {
                // term overflow: the series is hopeless here
                return {sum_at_min, min_term, used, false};
            }
            at = std::exp(lt);
            int sgn = th.sign * ((pp.k % 2 == 0) ? 1 : -1);
            term = sgn * at;
        }
        sum += term;
        peak = std::max(peak, at);
        const bool control = th.sign != 0 && !th.nearly_cancelled;
        if (!control) continue;
        last_controlled = at;
        if (at < min_term) {
            min_term = at;
            sum_at_min = sum;
        }
        if (at > prev && at > 4.0 * min_term) {
            if (++growing >= 3) break; // divergent (asymptotic) regime
        } else {
            growing = 0;
        }
        prev = at;
        if (at <= 1e-14 * std::max(std::abs(sum), 1e-300)) {
            if (++quiet >= 2) {
                converged = true;
                sum_at_min = sum;
                min_term = at;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    const double fp_floor = 2.5e-16 * peak;
    if (converged) {
        double err = std::max(last_controlled, fp_floor);
        return {sum_at_min, err, used,
                err <= 1e-9 * std::max(std::abs(sum_at_min), 1e-300)};
    }
    // truncated at the smallest term: usable when that term is small enough
    double err = std::max(min_term, fp_floor);
    double scale = std::max(std::abs(sum_at_min), 1e-300);
    bool usable = err < 1e-9 * scale;
    return {sum_at_min, err, used, usable};
}

} // namespace

EvalResult eval_contour(const HParams& h, double z, const ContourSpec& c) {
    if (!(z > 0.0))
        throw std::invalid_argument("eval_contour: z must be > 0");
    if (theta_decay_rate(h) <= 1e-12)
        throw convergence_error(
            "eval_contour: integrand does not decay along the vertical contour");
    const double lz = std::log(z);
    const int panels = std::max(1, c.nodes / (2 * quad::kGaussN));
    const double w = c.half_height / panels;
    auto f = [&](double t) -> cplx {
        cplx xi(c.gamma, t);
        return std::exp(theta_log(h, xi) - xi * lz);
    };
    cplx acc{};
    for (int i = 0; i < panels; ++i)
        acc += quad::gauss_panel(f, i * w, (i + 1) * w);
    double value = acc.real() / kPi;
    double rate = 0.5 * kPi * theta_decay_rate(h);
    double ftail = std::abs(f(c.half_height));
    double err = ftail / std::max(rate, 1e-3) / kPi;
    return {value, err, panels * 2 * quad::kGaussN,
            err <= 1e-8 * std::max(std::abs(value), 1e-300)};
}

EvalResult eval_contour(const HParams& h, double z) {
    if (!(z > 0.0))
        throw std::invalid_argument("eval_contour: z must be > 0");
    if (theta_decay_rate(h) <= 1e-12)
        throw convergence_error(
            "eval_contour: integrand does not decay along the vertical contour");
    Strip s = contour_strip(h);
    if (!(s.left < s.right))
        throw region_error("eval_contour: empty pole-free strip");
    double gamma;
    if (std::isinf(s.right))
        gamma = s.left + std::max(1.0, 0.5 * std::abs(s.left));
    else
        gamma = 0.5 * (s.left + s.right);
    ContourEval ce = contour_adaptive_height(h, z, gamma, 25.0, 400.0);
    return {ce.value, ce.err_est, ce.nodes,
            ce.err_est <= 1e-7 * std::max(std::abs(ce.value), 1e-300)};
}

double residue_power_coefficient(const HParams& h, bool small_route, double exponent) {
    const int nfam = small_route ? h.m : h.n;
    if (nfam == 0)
        throw region_error("residue_power_coefficient: no numerator family");
    std::vector<FamilyRef> fam(nfam);
    for (int j = 0; j < nfam; ++j) {
        if (small_route)
            fam[j] = {h.lower[j].first, h.lower[j].second};
        else
            fam[j] = {1.0 - h.upper[j].first, h.upper[j].second};
    }
    double acc = 0.0;
    for (int j = 0; j < nfam; ++j) {
        double kreal = small_route ? exponent * fam[j].coef - fam[j].off
                                   : -exponent * fam[j].coef - fam[j].off;
        int k = int(std::nearbyint(kreal));
        if (k < 0 || std::abs(kreal - k) > 1e-9) continue;
        double xi = small_route ? -(fam[j].off + k) / fam[j].coef
                                : (fam[j].off + k) / fam[j].coef;
        if (claimed_by_earlier_family(fam, j, xi, small_route)) continue;
        SignedLogTheta th = theta_log_signed_without(h, small_route, j, xi);
        if (th.numerator_pole)
            throw pole_error("residue_power_coefficient: non-simple pole");
        if (th.sign == 0) continue;
        double lt = th.log_abs - std::lgamma(double(k) + 1.0) - std::log(fam[j].coef);
        acc += th.sign * ((k % 2 == 0) ? 1 : -1) * std::exp(lt);
    }
    return acc;
}

EvalResult eval_series_small(const HParams& h, double z, int terms, double power_shift) {
    return residue_series(h, z, terms, power_shift, true);
}

EvalResult eval_series_large(const HParams& h, double z, int terms, double power_shift) {
    return residue_series(h, z, terms, power_shift, false);
}

HParams scale_argument(const HParams& h, double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("scale_argument: delta must be > 0");
    auto up = h.upper;
    auto lo = h.lower;
    for (auto& [a, A] : up) {
        (void)a;
        A /= delta;
    }
    for (auto& [b, B] : lo) {
        (void)b;
        B /= delta;
    }
    return HParams(h.m, h.n, std::move(up), std::move(lo));
}

HParams cancel_pairs(const HParams& h, double tol) {
    int m = h.m, n = h.n;
    auto up = h.upper;
    auto lo = h.lower;
    auto match = [&](const std::pair<double, double>& x,
                     const std::pair<double, double>& y) {
        return std::abs(x.first - y.first) <= tol && std::abs(x.second - y.second) <= tol;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        // upper denominator (i >= n) against lower numerator (j < m)
        for (int i = n; i < int(up.size()) && !changed; ++i)
            for (int j = 0; j < m && !changed; ++j)
                if (match(up[i], lo[j])) {
                    up.erase(up.begin() + i);
                    lo.erase(lo.begin() + j);
                    --m;
                    changed = true;
                }
        // upper numerator (i < n) against lower denominator (j >= m)
        for (int i = 0; i < n && !changed; ++i)
            for (int j = m; j < int(lo.size()) && !changed; ++j)
                if (match(up[i], lo[j])) {
                    up.erase(up.begin() + i);
                    lo.erase(lo.begin() + j);
                    --n;
                    changed = true;
                }
    }
    return HParams(m, n, std::move(up), std::move(lo));
}

namespace hcat {

HParams exp_identity(double alpha) {
    return HParams(1, 0, {}, {{alpha, 1.0}});
}

HParams bessel_k_identity(double nu) {
    return HParams(2, 0, {}, {{0.5 * nu, 1.0}, {-0.5 * nu, 1.0}});
}

HParams ml_identity(double alpha, double beta) {
    return HParams(1, 1, {{0.0, 1.0}}, {{0.0, 1.0}, {1.0 - beta, alpha}});
}

HParams laplace_exp_identity(double rho, double sigma) {
    return HParams(1, 0, {{rho, sigma}}, {{0.0, 1.0}});
}

} // namespace hcat

} // namespace fracdiff
