// Command-line front end: kernel/Green-function evaluation on grids,
// Cauchy solves from CSV initial data, fractional moments, tail-exponent
// measurement, and the cross-validation suites.

#include <clocale>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracdiff/kernels.hpp"
#include "fracdiff/moments.hpp"
#include "fracdiff/oracle.hpp"
#include "fracdiff/solver.hpp"
#include "fracdiff/special.hpp"

using namespace fracdiff;
using nlohmann::json;

namespace {

constexpr int kExitFlags = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitGrid = 4;

struct Options {
    double alpha = 2.0;
    double beta = 1.0;
    double eta = 1.0;
    double t = 1.0;
    std::string x_range = "-5:5:101";
    std::string route = "auto";
    double tol = 1e-8;
    std::string out;
    std::string report;
    int threads = 0;
    // solver knobs
    std::string f_file, g_file;
    double kmax = 64.0;
    int nk = 1024;
    int n_tau = 48;
    std::string delta_range = "0.5:0.5:1";
    std::string suite = "all";
};

std::vector<double> parse_range(const std::string& s) {
    // lo:hi:count or a single number
    std::vector<double> out;
    std::istringstream is(s);
    std::string a, b, c;
    if (!std::getline(is, a, ':')) return out;
    if (!std::getline(is, b, ':')) {
        try {
            out.push_back(std::stod(a));
        } catch (...) {
        }
        return out;
    }
    if (!std::getline(is, c, ':')) return out;
    try {
        double lo = std::stod(a), hi = std::stod(b);
        long n = std::stol(c);
        if (n < 1 || (n == 1 && hi != lo)) return out;
        if (n == 1) {
            out.push_back(lo);
            return out;
        }
        double dx = (hi - lo) / double(n - 1);
        for (long i = 0; i < n; ++i) out.push_back(lo + dx * double(i));
    } catch (...) {
        out.clear();
    }
    return out;
}

Route route_from_string(const std::string& r) {
    if (r == "series_small") return Route::series_small;
    if (r == "series_large") return Route::series_large;
    if (r == "contour") return Route::contour;
    if (r == "fourier") return Route::fourier;
    if (r == "auto") return Route::automatic;
    throw CLI::ValidationError("--route", "unknown route '" + r + "'");
}

const char* route_name(Route r) {
    switch (r) {
    case Route::series_small: return "series_small";
    case Route::series_large: return "series_large";
    case Route::contour: return "contour";
    case Route::fourier: return "fourier";
    case Route::automatic: return "auto";
    }
    return "?";
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_)
                throw std::runtime_error("cannot open output file " + path);
        }
    }
    void line(const std::string& s) {
        std::ostream& os = file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout;
        os << s << '\n';
    }

  private:
    std::ofstream file_;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int thread_count(const Options& o) {
    if (o.threads > 0) return o.threads;
    if (const char* env = std::getenv("FRACDIFF_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

// index-addressed fan-out keeps the output ordering fixed
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
        std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

void write_report(const std::string& path, const std::string& command,
                  const KernelSpec& spec, long rows, double discrepancy,
                  double wall_s) {
    if (path.empty()) return;
    json j{{"command", command},
           {"spec", {{"alpha", spec.alpha}, {"beta", spec.beta}, {"eta", spec.eta}}},
           {"rows_written", rows},
           {"max_cross_route_discrepancy", discrepancy},
           {"wall_time_s", wall_s}};
    std::ofstream os(path);
    os << j.dump(2) << '\n';
}

struct Row {
    double value = 0.0;
    double err = 0.0;
    Route used = Route::automatic;
    bool failed = false;
    std::string what;
};

int cmd_kernel(const Options& o) {
    KernelSpec spec(o.alpha, o.beta, o.eta);
    auto xs = parse_range(o.x_range);
    if (xs.empty()) {
        std::fprintf(stderr, "kernel: empty or malformed --x range '%s'\n",
                     o.x_range.c_str());
        return kExitFlags;
    }
    Route route = route_from_string(o.route);
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Row> rows(xs.size());
    parallel_for(xs.size(), thread_count(o), [&](std::size_t i) {
        try {
            FsEval fe = fundamental_solution_ex(spec, xs[i], o.t, route, o.tol);
            rows[i] = {fe.value, fe.err_est, fe.route_used, false, {}};
        } catch (const std::exception& e) {
            rows[i] = {0, 0, route, true, e.what()};
        }
    });
    for (const Row& r : rows)
        if (r.failed) {
            std::fprintf(stderr, "kernel: %s\n", r.what.c_str());
            return kExitNumerical;
        }
    Output out(o.out);
    out.line("x,t,alpha,beta,eta,route,value,err_est");
    for (std::size_t i = 0; i < xs.size(); ++i)
        out.line(fmt17(xs[i]) + "," + fmt17(o.t) + "," + fmt17(o.alpha) + "," +
                 fmt17(o.beta) + "," + fmt17(o.eta) + "," + route_name(rows[i].used) +
                 "," + fmt17(rows[i].value) + "," + fmt17(rows[i].err));
    double disc = 0.0;
    if (!o.report.empty()) {
        for (std::size_t i = 0; i < xs.size(); i += std::max<std::size_t>(1, xs.size() / 16)) {
            try {
                Route alt = rows[i].used == Route::fourier ? Route::contour : Route::fourier;
                double other = fundamental_solution(spec, xs[i], o.t, alt, 1e-7);
                disc = std::max(disc, std::abs(other - rows[i].value));
            } catch (const std::exception&) {
            }
        }
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_report(o.report, "kernel", spec, long(xs.size()), disc, wall);
    return 0;
}

int cmd_green(const Options& o, bool g2) {
    KernelSpec spec(o.alpha, o.beta, o.eta);
    auto xs = parse_range(o.x_range);
    if (xs.empty()) {
        std::fprintf(stderr, "%s: empty or malformed --x range\n", g2 ? "g2" : "g1");
        return kExitFlags;
    }
    auto t0 = std::chrono::steady_clock::now();
    std::vector<Row> rows(xs.size());
    parallel_for(xs.size(), thread_count(o), [&](std::size_t i) {
        try {
            double v = g2 ? green_g2(spec, xs[i], o.t, std::min(o.tol, 1e-9))
                          : green_g1(spec, xs[i], o.t, std::min(o.tol, 1e-9));
            rows[i] = {v, std::min(o.tol, 1e-9), Route::fourier, false, {}};
        } catch (const std::exception& e) {
            rows[i] = {0, 0, Route::fourier, true, e.what()};
        }
    });
    for (const Row& r : rows)
        if (r.failed) {
            std::fprintf(stderr, "%s: %s\n", g2 ? "g2" : "g1", r.what.c_str());
            return kExitNumerical;
        }
    Output out(o.out);
    out.line("x,t,alpha,beta,eta,route,value,err_est");
    for (std::size_t i = 0; i < xs.size(); ++i)
        out.line(fmt17(xs[i]) + "," + fmt17(o.t) + "," + fmt17(o.alpha) + "," +
                 fmt17(o.beta) + "," + fmt17(o.eta) + ",fourier," +
                 fmt17(rows[i].value) + "," + fmt17(rows[i].err));
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_report(o.report, g2 ? "g2" : "g1", spec, long(xs.size()), 0.0, wall);
    return 0;
}

SampledField read_field_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::string line;
    long lineno = 0;
    std::vector<double> xs, vs;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1) {
            if (line != "x,value")
                throw std::runtime_error(path + ":1: expected header 'x,value'");
            continue;
        }
        std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'x,value'");
        try {
            std::size_t used = 0;
            xs.push_back(std::stod(line.substr(0, comma), &used));
            vs.push_back(std::stod(line.substr(comma + 1), &used));
        } catch (...) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed number");
        }
    }
    if (xs.size() < 2)
        throw std::runtime_error(path + ": need at least two samples");
    double dx = xs[1] - xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (std::abs((xs[i] - xs[i - 1]) - dx) > 1e-9 * std::max(1.0, std::abs(dx)))
            throw std::runtime_error(path + ":" + std::to_string(i + 2) +
                                     ": grid is not uniform");
    return SampledField(xs[0], dx, std::move(vs));
}

int cmd_solve(const Options& o) {
    KernelSpec spec(o.alpha, o.beta, o.eta);
    if (o.f_file.empty()) {
        std::fprintf(stderr, "solve: --f FILE is required\n");
        return kExitFlags;
    }
    SampledField f(0, 1, {0, 0});
    SampledField g(0, 1, {0, 0});
    bool has_g = !o.g_file.empty();
    try {
        f = read_field_csv(o.f_file);
        if (has_g) g = read_field_csv(o.g_file);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solve: %s\n", e.what());
        return kExitFlags;
    }
    SolveConfig cfg(o.kmax, o.nk, o.n_tau, o.tol);
    auto t0 = std::chrono::steady_clock::now();
    SampledField result(0, 1, {0, 0});
    try {
        result = solve(spec, f, has_g ? &g : nullptr, nullptr, o.t, cfg);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "solve: %s\n", e.what());
        return kExitGrid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solve: %s\n", e.what());
        return kExitNumerical;
    }
    Output out(o.out);
    out.line("x,N");
    for (std::size_t i = 0; i < result.size(); ++i)
        out.line(fmt17(result.x(i)) + "," + fmt17(result.values[i]));
    double disc = 0.0;
    if (!o.report.empty()) {
        SolveConfig fine(o.kmax, o.nk, 2 * o.n_tau, o.tol);
        SampledField check = solve(spec, f, has_g ? &g : nullptr, nullptr, o.t, fine);
        for (std::size_t i = 0; i < result.size(); ++i)
            disc = std::max(disc, std::abs(check.values[i] - result.values[i]));
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_report(o.report, "solve", spec, long(result.size()), disc, wall);
    return 0;
}

int cmd_moments(const Options& o) {
    KernelSpec spec(o.alpha, o.beta, o.eta);
    auto deltas = parse_range(o.delta_range);
    if (deltas.empty()) {
        std::fprintf(stderr, "moments: empty or malformed --delta range\n");
        return kExitFlags;
    }
    auto t0 = std::chrono::steady_clock::now();
    Output out(o.out);
    out.line("delta,t,alpha,beta,eta,formula,quadrature,abs_diff");
    double disc = 0.0;
    for (double d : deltas) {
        MomentQuery q(d, spec);
        try {
            double fv = moment_formula(spec, q, o.t);
            double qv = moment_quadrature(spec, q, o.t);
            disc = std::max(disc, std::abs(fv - qv));
            out.line(fmt17(d) + "," + fmt17(o.t) + "," + fmt17(o.alpha) + "," +
                     fmt17(o.beta) + "," + fmt17(o.eta) + "," + fmt17(fv) + "," +
                     fmt17(qv) + "," + fmt17(std::abs(fv - qv)));
        } catch (const std::exception& e) {
            std::fprintf(stderr, "moments: delta=%g: %s\n", d, e.what());
            return kExitNumerical;
        }
    }
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_report(o.report, "moments", spec, long(deltas.size()), disc, wall);
    return 0;
}

int cmd_asymptotics(const Options& o) {
    KernelSpec spec(o.alpha, o.beta, o.eta);
    auto t0 = std::chrono::steady_clock::now();
    const double x1 = 1e2, x2 = 1e4;
    double n1, n2;
    try {
        n1 = fundamental_solution(spec, x1, o.t, Route::automatic, 1e-9);
        n2 = fundamental_solution(spec, x2, o.t, Route::automatic, 1e-9);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "asymptotics: %s\n", e.what());
        return kExitNumerical;
    }
    double measured = (std::log(n2) - std::log(n1)) / (std::log(x2) - std::log(x1));
    double expected = -(1.0 + spec.alpha);
    Output out(o.out);
    out.line("alpha,beta,eta,t,x_lo,x_hi,measured_exponent,expected_exponent,abs_error");
    out.line(fmt17(o.alpha) + "," + fmt17(o.beta) + "," + fmt17(o.eta) + "," +
             fmt17(o.t) + "," + fmt17(x1) + "," + fmt17(x2) + "," + fmt17(measured) +
             "," + fmt17(expected) + "," + fmt17(std::abs(measured - expected)));
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_report(o.report, "asymptotics", spec, 1, std::abs(measured - expected), wall);
    return 0;
}

// ---- validation suites ----

struct SuiteResult {
    bool pass;
    std::string metric;
};

SuiteResult suite_ml() {
    double worst = 0.0;
    for (double x = 0.0; x <= 50.0; x += 2.5) {
        double e1 = std::abs(mittag_leffler_real(1, 1, -x) - std::exp(-x));
        worst = std::max(worst, e1 / std::max(std::exp(-x), 1e-30));
    }
    for (double x = 0.0; x <= 7.0; x += 0.35) {
        double want = std::cos(x);
        worst = std::max(worst, std::abs(mittag_leffler_real(2, 1, -x * x) - want) /
                                    std::max(std::abs(want), 1e-2));
    }
    for (double x : {0.5, 2.0, 8.0}) {
        double want = std::exp(x * x) * std::erfc(x);
        worst = std::max(worst, std::abs(mittag_leffler_real(0.5, 1, -x) - want) / want);
    }
    for (double a : {0.6, 1.4}) {
        for (double z : {-20.0, -3.0, 0.5}) {
            double lhs = mittag_leffler_real(a, 0.9, z);
            double rhs = rgamma(cplx(0.9, 0)).real() + z * mittag_leffler_real(a, a + 0.9, z);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
    }
    return {worst < 1e-10, "max rel err " + fmt17(worst)};
}

SuiteResult suite_routes() {
    double worst = 0.0;
    int pairs = 0;
    for (double alpha : {0.75, 1.5}) {
        for (double beta : {0.5, 1.0}) {
            KernelSpec s(alpha, beta, 1.0);
            for (double X : {0.02, 0.05, 0.2, 0.8, 3.0, 8.0, 20.0, 40.0}) {
                double x = X * similarity_scale(s, 1.0);
                std::vector<double> vals;
                for (Route r : {Route::series_small, Route::series_large, Route::contour}) {
                    try {
                        vals.push_back(fundamental_solution(s, x, 1.0, r, 1e-7));
                    } catch (const std::exception&) {
                    }
                }
                for (std::size_t i = 0; i + 1 < vals.size(); ++i)
                    for (std::size_t j = i + 1; j < vals.size(); ++j) {
                        ++pairs;
                        double scale = std::max({std::abs(vals[i]), std::abs(vals[j]), 1e-12});
                        worst = std::max(worst, std::abs(vals[i] - vals[j]) / scale);
                    }
            }
        }
    }
    return {worst < 1e-6 && pairs >= 20,
            "max pairwise " + fmt17(worst) + " over " + std::to_string(pairs) + " pairs"};
}

SuiteResult suite_talbot() {
    double worst = 0.0;
    for (double beta : {0.5, 0.7, 0.9})
        for (double a : {0.5, 2.0, 5.0})
            for (double t : {0.4, 1.0, 1.5}) {
                auto F = [&](std::complex<double> s) {
                    return std::pow(s, beta - 1.0) / (std::pow(s, beta) + a);
                };
                double want = mittag_leffler_real(beta, 1.0, -a * std::pow(t, beta));
                worst = std::max(worst, std::abs(talbot_invert(F, t) - want));
            }
    return {worst < 1e-6, "max abs err " + fmt17(worst)};
}

SuiteResult suite_moments() {
    double worst = 0.0;
    const struct {
        double a, b, d;
    } combos[] = {{1.5, 0.8, 0.7}, {2.0, 1.0, 1.0}, {1.2, 0.5, 0.3}, {2.0, 0.5, 1.8}};
    for (auto c : combos) {
        KernelSpec s(c.a, c.b, 1.0);
        MomentQuery q(c.d, s);
        double f = moment_formula(s, q, 1.0);
        double g = moment_quadrature(s, q, 1.0);
        worst = std::max(worst, std::abs(f - g) / std::abs(f));
    }
    KernelSpec s(1.5, 0.8, 1.0);
    double m1 = moment_formula(s, MomentQuery(0.4, s), 1.0);
    double m2 = moment_formula(s, MomentQuery(0.4, s), 2.0);
    double slope = (std::log(m2) - std::log(m1)) / std::log(2.0);
    bool slope_ok = std::abs(slope - s.beta * 0.4 / s.alpha) < 1e-8;
    return {worst < 1e-5 && slope_ok, "max rel formula-vs-quadrature " + fmt17(worst)};
}

SuiteResult suite_l1() {
    double want = mittag_leffler_real(0.5, 1.0, -1.0);
    double e512 = std::abs(caputo_l1_scalar(0.5, 1.0, 1.0, 512) - want);
    double e1024 = std::abs(caputo_l1_scalar(0.5, 1.0, 1.0, 1024) - want);
    double order = std::log2(e512 / e1024);
    bool ok = e1024 < 1e-5 && order >= 1.4;
    return {ok, "err(1024) " + fmt17(e1024) + ", order " + fmt17(order)};
}

SuiteResult suite_tail() {
    double worst = 0.0;
    for (double alpha : {1.0, 1.5}) {
        KernelSpec s(alpha, alpha < 1.2 ? 1.0 : 0.8, 1.0);
        double n1 = fundamental_solution(s, 1e2, 1.0, Route::series_large, 1e-8);
        double n2 = fundamental_solution(s, 1e4, 1.0, Route::series_large, 1e-8);
        double slope = (std::log(n2) - std::log(n1)) / std::log(100.0);
        worst = std::max(worst, std::abs(slope + 1.0 + alpha));
    }
    return {worst < 0.05, "max exponent deviation " + fmt17(worst)};
}

SuiteResult suite_conserve() {
    double worst_norm = 0.0, worst_ss = 0.0;
    bool positive = true;
    for (double alpha : {1.5, 2.0}) {
        for (double beta : {0.5, 1.0}) {
            KernelSpec s(alpha, beta, 1.0);
            double scale = similarity_scale(s, 1.0);
            // normalization by midpoint rule plus analytic tail
            double X1 = (alpha < 2.0 ? 40.0 : 12.0) * scale;
            // x = u^2 midpoint rule: flattens the |x|^{alpha-1} cusp
            int n = 2500;
            double u1 = std::sqrt(X1);
            double h = u1 / n, acc = 0.0;
            for (int i = 0; i < n; ++i) {
                double u = (i + 0.5) * h;
                double v = fundamental_solution(s, u * u, 1.0, Route::automatic, 1e-9);
                if (v < 0.0) positive = false;
                acc += v * 2.0 * u * h;
            }
            double tail = 0.0;
            if (alpha < 2.0) {
                HParams h = fundamental_h(s);
                double Z1 = X1 / scale;
                double off = 1.0 - h.upper[0].first;
                double coef = h.upper[0].second;
                for (int k = 0; k <= 6; ++k) {
                    double e = -(off + k) / coef;
                    double c = residue_power_coefficient(h, false, e);
                    if (c != 0.0 && e < -1e-9)
                        tail += c * std::pow(Z1, e) / (-e) / alpha;
                }
            }
            worst_norm = std::max(worst_norm, std::abs(2.0 * (acc + tail) - 1.0));
        }
    }
    {
        KernelSpec s(1.5, 0.8, 1.3);
        double ref = 0.0;
        bool first = true;
        for (double t : {0.25, 1.0, 4.0}) {
            double sc = similarity_scale(s, t);
            double v = fundamental_solution(s, 0.7 * sc, t, Route::fourier) * sc;
            if (first) {
                ref = v;
                first = false;
            } else {
                worst_ss = std::max(worst_ss, std::abs(v - ref) / std::abs(ref));
            }
        }
    }
    bool ok = worst_norm < 2e-6 && worst_ss < 1e-7 && positive;
    return {ok, "norm " + fmt17(worst_norm) + ", collapse " + fmt17(worst_ss)};
}

int cmd_validate(const Options& o) {
    struct Entry {
        const char* name;
        SuiteResult (*run)();
    };
    const Entry entries[] = {
        {"ml", suite_ml},         {"routes", suite_routes}, {"talbot", suite_talbot},
        {"moments", suite_moments}, {"l1", suite_l1},       {"tail", suite_tail},
        {"conserve", suite_conserve},
    };
    bool found = false;
    bool all_pass = true;
    for (const Entry& e : entries) {
        if (o.suite != "all" && o.suite != e.name) continue;
        found = true;
        SuiteResult r = e.run();
        std::printf("%-10s %s  (%s)\n", e.name, r.pass ? "PASS" : "FAIL",
                    r.metric.c_str());
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
    }
    if (!found) {
        std::fprintf(stderr, "validate: unknown suite '%s'\n", o.suite.c_str());
        return kExitFlags;
    }
    return all_pass ? 0 : 1;
}

void add_common(CLI::App* cmd, Options& o) {
    auto opt = [&](const char* name, auto& target, const char* help) {
        cmd->add_option(name, target, help)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    };
    opt("--alpha", o.alpha, "space-fractional order in (0,2]");
    opt("--beta", o.beta, "time-fractional order in (0,2]");
    opt("--eta", o.eta, "diffusion coefficient > 0");
    opt("--t", o.t, "evaluation time > 0");
    opt("--x", o.x_range, "grid lo:hi:count");
    opt("--route", o.route, "series_small|series_large|contour|fourier|auto");
    opt("--tol", o.tol, "target accuracy");
    opt("--out", o.out, "output CSV file (default stdout)");
    opt("--report", o.report, "write a JSON run report here");
    opt("--threads", o.threads, "worker threads (or FRACDIFF_THREADS)");
    static std::string sink;
    opt("--config", sink, "key = value config file; flags override");
}

// key = value lines (TOML-style, # comments), handed to the parser as
// leading tokens so explicit flags override them
std::vector<std::string> config_tokens(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file " + path);
    auto trim = [](std::string v) {
        std::size_t b = v.find_first_not_of(" \t");
        std::size_t e = v.find_last_not_of(" \t");
        return (b == std::string::npos) ? std::string() : v.substr(b, e - b + 1);
    };
    std::vector<std::string> toks;
    std::string line;
    long lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.size() >= 2 && ((val.front() == '"' && val.back() == '"') ||
                                (val.front() == '\'' && val.back() == '\'')))
            val = val.substr(1, val.size() - 2);
        toks.push_back("--" + key);
        toks.push_back(val);
    }
    return toks;
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");
    CLI::App app{"space-time fractional diffusion toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* kernel = app.add_subcommand("kernel", "fundamental solution on a grid");
    add_common(kernel, o);
    auto* g1 = app.add_subcommand("g1", "Green function G1 on a grid");
    add_common(g1, o);
    auto* g2 = app.add_subcommand("g2", "Green function G2 on a grid");
    add_common(g2, o);
    auto* solve_cmd = app.add_subcommand("solve", "Cauchy solve from CSV initial data");
    add_common(solve_cmd, o);
    solve_cmd->add_option("--f", o.f_file, "initial data CSV (header x,value)");
    solve_cmd->add_option("--g", o.g_file, "initial slope CSV, only for 1 < beta <= 2");
    solve_cmd->add_option("--kmax", o.kmax, "wavenumber cutoff");
    solve_cmd->add_option("--nk", o.nk, "minimum spectral nodes");
    solve_cmd->add_option("--ntau", o.n_tau, "source-convolution nodes");
    auto* moments_cmd = app.add_subcommand("moments", "fractional moments");
    add_common(moments_cmd, o);
    moments_cmd->add_option("--delta", o.delta_range, "moment orders lo:hi:count");
    auto* asym = app.add_subcommand("asymptotics", "tail-exponent measurement");
    add_common(asym, o);
    auto* validate = app.add_subcommand("validate", "cross-validation suites");
    add_common(validate, o);
    validate->add_option("--suite", o.suite,
                         "ml|routes|talbot|moments|l1|tail|conserve|all");

    std::vector<std::string> args(argv + 1, argv + argc);
    // inline any --config file right after the subcommand token
    try {
        for (std::size_t i = 0; i < args.size(); ++i) {
            std::string path;
            if (args[i] == "--config" && i + 1 < args.size())
                path = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0)
                path = args[i].substr(9);
            if (!path.empty() && !args.empty()) {
                auto toks = config_tokens(path);
                args.insert(args.begin() + 1, toks.begin(), toks.end());
                break;
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFlags;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitFlags;
    }

    try {
        if (kernel->parsed()) return cmd_kernel(o);
        if (g1->parsed()) return cmd_green(o, false);
        if (g2->parsed()) return cmd_green(o, true);
        if (solve_cmd->parsed()) return cmd_solve(o);
        if (moments_cmd->parsed()) return cmd_moments(o);
        if (asym->parsed()) return cmd_asymptotics(o);
        if (validate->parsed()) return cmd_validate(o);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitFlags;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumerical;
    }
    return kExitFlags;
}
