// Runs the twelve acceptance checks and prints one PASS/FAIL line each.
// Exit status is nonzero when any check fails.

#include "oracles.hpp"

#include "sqfl/analytic.hpp"
#include "sqfl/cli.hpp"
#include "sqfl/diagonal.hpp"
#include "sqfl/error.hpp"
#include "sqfl/lattice.hpp"
#include "sqfl/sieve.hpp"
#include "sqfl/smooth.hpp"
#include "sqfl/variance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sqfl;

namespace {

// Pinned tolerances and limits.
constexpr double kEnumSeconds = 5;
constexpr double kBGCeiling = 5.0;
constexpr double kZetaIdentityTol = 1e-3;
constexpr double kPoissonTol = 1e-6;
constexpr double kSincCrossTol = 1e-8;
constexpr double kConjDigitsTol = 1e-10;
constexpr double kScalingLo = 0.95, kScalingHi = 1.05;
constexpr double kMcSigmas = 3.0;
constexpr std::uint64_t kMcSamples = 100000;
constexpr std::uint64_t kMcSeed = 7;
constexpr double kExceptionalFinal = 0.05;
constexpr double kPlateauTol = 1e-12;
constexpr double kConvolutionTol = 1e-8;
constexpr double kDerivativeSlack = 1e-6;

struct Outcome {
    bool pass;
    std::string detail;
};

const ZetaConstants& zc()
{
    static const ZetaConstants z = ZetaConstants::compute();
    return z;
}

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Rational h_power(double X, double a) { return Rational::from_double(std::pow(X, a)); }

Outcome c1_enumeration()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto sieve = SieveTable::build(100);
    const auto got = enumerate_squarefull(1, 1000000, sieve);
    std::size_t i = 0;
    bool ok = true;
    for (std::uint64_t n = 1; n <= 1000000 && ok; ++n) {
        if (!oracle::is_squarefull(n))
            continue;
        ok = i < got.size() && got[i].value == n && got[i].a * got[i].a * got[i].b * got[i].b * got[i].b == n;
        ++i;
    }
    ok = ok && i == got.size();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {ok && secs < kEnumSeconds, fmt("%zu squarefull numbers, %.2f s", got.size(), secs)};
}

Outcome c2_bateman_grosswald()
{
    const auto sieve = SieveTable::build(10000);
    double worst = 0, at = 0;
    for (int e = 4; e <= 12; ++e) {
        const double x = std::pow(10.0, e);
        const auto q = static_cast<double>(count_squarefull(static_cast<std::uint64_t>(x), sieve));
        const double r = std::fabs(q - bateman_grosswald(x, zc()).total) / std::pow(x, 1.0 / 6);
        if (r > worst) {
            worst = r;
            at = x;
        }
    }
    return {worst <= kBGErrorConstant && kBGErrorConstant <= kBGCeiling,
            fmt("max |Q - BG|/x^(1/6) = %.4f at x = %.0e, documented constant %.2f", worst, at, kBGErrorConstant)};
}

Outcome c3_zeta_identity()
{
    const auto sieve = SieveTable::build(1000000);
    const double partial = squarefree_dirichlet_partial(1.5, sieve);
    const double rel = std::fabs(partial / zc().c_lead - 1);
    return {rel <= kZetaIdentityTol, fmt("relative error %.3e", rel)};
}

Outcome c4_poisson()
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> th(0.0, 1.0);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        double theta = 1 - th(rng); // (0, 1]
        const double exact = (1 / theta - 1) / 2;
        const double v = inner_sinc_sum(theta, 1e-9).value;
        worst = std::max(worst, std::fabs(v - exact) / std::max(exact, 1e-300));
    }
    return {worst <= kPoissonTol, fmt("max relative error %.3e over 100 theta", worst)};
}

Outcome c5_conjecture_constant()
{
    const double quad = sinc_integral(1e-12);
    const double closed = sinc_integral_closed_form();
    const double c1 = zeta_euler_maclaurin(4.0 / 3.0, 30) / zeta_euler_maclaurin(2.0, 30) * quad;
    const double c2 = zeta_euler_maclaurin(4.0 / 3.0, 300) / zeta_euler_maclaurin(2.0, 300) * quad;
    const double cross = std::fabs(quad - closed);
    const double digits = std::fabs(c1 - c2) / c1;
    return {cross <= kSincCrossTol && digits <= kConjDigitsTol,
            fmt("I = %.12f, closed form diff %.2e, c_conj = %.12f, depth diff %.2e", quad, cross, c1, digits)};
}

Outcome c6_scaling()
{
    const auto sieve = SieveTable::build(saturation_cut(1e4));
    bool ok = true;
    std::string d;
    for (double H : {1e3, 1e4}) {
        const auto r = diagonal_saturated(H, sieve, zc());
        const double ratio = r.value / (zc().c_conj * std::pow(H, 2.0 / 3));
        ok = ok && ratio >= kScalingLo && ratio <= kScalingHi;
        d += fmt("H=%.0e ratio %.4f (vs 4/3 c_conj: %.4f); ", H, ratio, r.value / r.prediction_residue);
    }
    return {ok, d};
}

Outcome c7_variance_oracles()
{
    bool ok = true;
    std::string d;
    const auto small = SieveTable::build(200);
    for (int Hi : {1, 5, 20}) {
        const auto p = IntervalParams::make(10000, Rational(Hi, 1), zc());
        const double v = variance_exact(p, small, zc()).exact;
        const auto o = oracle::riemann_variance(10000, Hi, p.center, 1000000);
        const double gap = std::fabs(v - o.value);
        ok = ok && gap <= o.error_bound;
        d += fmt("H=%d gap %.1e <= %.1e; ", Hi, gap, o.error_bound);
    }
    const Rational H(10, 1);
    const auto p = IntervalParams::make(1000000, H, zc());
    const auto sieve = SieveTable::build(required_sieve_limit(1000000, H));
    const auto r = variance_exact(p, sieve, zc(), {1, kMcSamples, kMcSeed, {}});
    const double z = std::fabs(r.exact - r.mc_estimate) / r.mc_stderr;
    ok = ok && z <= kMcSigmas;
    d += fmt("MC |exact - mc| = %.2f stderr", z);
    return {ok, d};
}

struct GridRun {
    double X;
    Rational H;
    double exact;
    double exceptional;
};

const std::vector<GridRun>& envelope_grid()
{
    static const std::vector<GridRun> runs = [] {
        std::vector<GridRun> out;
        for (double X : {1e8, 1e10, 1e12})
            for (double a : {0.05, 0.10, 0.15}) {
                const auto H = h_power(X, a);
                const auto Xi = static_cast<std::uint64_t>(X);
                const auto sieve = SieveTable::build(required_sieve_limit(Xi, H));
                const double thr = std::pow(H.to_double(), 0.8995);
                const auto r = variance_exact(IntervalParams::make(Xi, H, zc()), sieve, zc(), {1, 0, 0, thr});
                out.push_back({X, H, r.exact, r.exceptional_measure});
            }
        return out;
    }();
    return runs;
}

Outcome c8_envelope()
{
    double worst = 0;
    for (const auto& g : envelope_grid())
        worst = std::max(worst, g.exact / std::pow(g.H.to_double(), 1.799));
    return {worst <= kEnvelopeConstant,
            fmt("max variance/H^1.799 = %.4f, documented constant %.2f", worst, kEnvelopeConstant)};
}

Outcome c9_exceptional_trend()
{
    std::vector<double> m;
    for (const auto& g : envelope_grid())
        if (std::fabs(g.H.to_double() - std::pow(g.X, 0.15)) < 1e-5)
            m.push_back(g.exceptional);
    bool decreasing = m.size() == 3;
    for (std::size_t i = 1; i < m.size(); ++i)
        decreasing = decreasing && m[i] < m[i - 1];
    const bool final_ok = !m.empty() && m.back() < kExceptionalFinal;
    std::string list;
    for (double v : m)
        list += fmt(list.empty() ? "%.3g" : ", %.3g", v);
    return {decreasing && final_ok, fmt("measures %s; strictly decreasing: %s; final < %.2f: %s", list.c_str(),
                                        decreasing ? "yes" : "no", kExceptionalFinal, final_ok ? "yes" : "no")};
}

Outcome c10_smooth_weights()
{
    double plateau = 0, conv = 0, deriv_excess = 0;
    for (int k : {1, 2, 5, 10, 20, 40})
        for (int g = 0; g <= 1000; ++g) {
            const double L = 0.37;
            plateau = std::max(plateau, std::fabs(u_k(k * L * (1 + g / 100.0), k, L) - 1));
        }
    for (int k = 1; k <= 6; ++k)
        for (int g = -10; g <= 210; ++g) {
            const double t = k * g / 200.0;
            conv = std::max(conv, std::fabs(u_k_explicit(t * 1.7, k, 1.7) - oracle::conv_step(t, k)));
        }
    for (int k : {2, 4, 6, 10, 16})
        for (auto s : {WeightSign::minus, WeightSign::plus}) {
            SmoothWeightSpec spec;
            spec.k = k;
            spec.X = 1e6;
            spec.L = 1e6 / (4.0 * k);
            spec.sign = s;
            for (int i = 1; i < k; ++i)
                deriv_excess = std::max(deriv_excess, derivative_bound_check(spec, i, 10000) /
                                                          derivative_bound_constant(k, i));
        }
    return {plateau <= kPlateauTol && conv <= kConvolutionTol && deriv_excess <= 1 + kDerivativeSlack,
            fmt("plateau dev %.1e, explicit vs convolution %.1e, max FD/constant %.4f", plateau, conv, deriv_excess)};
}

Outcome c11_lattice()
{
    double r3 = 0, r4 = 0;
    int points = 0, flagged = 0;
    for (Curve f : {Curve::inv23, Curve::inv32})
        for (std::uint64_t A : {100ull, 300ull, 1000ull, 3000ull, 10000ull})
            for (double e : {1.2, 1.6}) {
                CurveCountProblem p{f, A, std::pow(static_cast<double>(A), e), 0};
                const double D = lemma3_delta(p);
                p.delta = std::sqrt(D) / 2;
                r3 = std::max(r3, count_near_curve(p) / lemma3_bound(p, D));
                auto q = p;
                q.delta = 0.5 * std::min(q.N / A, q.N / (double(A) * A) + 1 / q.N);
                r4 = std::max(r4, count_near_curve(q) / lemma4_bound(q));
                ++points;
                auto over = p;
                over.delta = std::sqrt(D) / 2 * 1.5;
                try {
                    lemma3_bound(over, D);
                } catch (const Error& err) {
                    if (err.kind() == ErrorKind::hypothesis)
                        ++flagged;
                }
            }
    return {points == 20 && r3 <= kLemma3Constant && r4 <= kLemma4Constant && flagged == 20,
            fmt("%d points, max ratio %.4f (seven-term bound, constant %.2f), %.4f (four-term bound, constant %.2f), "
                "%d/20 over-delta cases flagged",
                points, r3, kLemma3Constant, r4, kLemma4Constant, flagged)};
}

std::string cli_report(std::vector<std::string> args, int& code)
{
    args.insert(args.begin(), "sqfl");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const auto parsed = cli::parse_args(static_cast<int>(argv.size()), argv.data(), out, err);
    code = parsed.config ? cli::run(*parsed.config, out, err) : parsed.exit_code;
    return out.str();
}

Outcome c12_determinism()
{
    std::vector<std::vector<std::string>> configs;
    for (const char* h : {"1", "5", "20"})
        configs.push_back({"variance", "--x", "1e4", "--h", h});
    configs.push_back({"variance", "--x", "1e6", "--h", "10", "--mc-samples", std::to_string(kMcSamples), "--seed",
                       std::to_string(kMcSeed)});
    for (double X : {1e8, 1e10, 1e12}) {
        std::string grid;
        for (double a : {0.05, 0.10, 0.15})
            grid += (grid.empty() ? "" : ",") + h_power(X, a).str();
        configs.push_back({"sweep", "--x", fmt("%.0f", X), "--h-grid", grid});
    }
    int mismatches = 0, failures = 0, reports = 0;
    for (const auto& base : configs) {
        std::string ref;
        for (int rep = 0; rep < 2; ++rep)
            for (const char* t : {"1", "4", "8"}) {
                auto args = base;
                args.insert(args.end(), {"--threads", t});
                int code = 0;
                const auto r = cli_report(args, code);
                ++reports;
                failures += code != 0;
                if (ref.empty())
                    ref = r;
                else
                    mismatches += r != ref;
            }
    }
    return {mismatches == 0 && failures == 0,
            fmt("%d reports over %zu configs, %d mismatches, %d failed runs", reports, configs.size(), mismatches,
                failures)};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> checks = {
        {"exact enumeration to 10^6", c1_enumeration},
        {"Bateman-Grosswald error constant", c2_bateman_grosswald},
        {"squarefree Dirichlet partial sum", c3_zeta_identity},
        {"Poisson sinc oracle", c4_poisson},
        {"conjecture constant", c5_conjecture_constant},
        {"diagonal H^(2/3) scaling against c_conj", c6_scaling},
        {"variance against oracles", c7_variance_oracles},
        {"variance envelope H^1.799", c8_envelope},
        {"exceptional measure trend", c9_exceptional_trend},
        {"smooth weights", c10_smooth_weights},
        {"lattice-point harness", c11_lattice},
        {"determinism across thread counts", c12_determinism},
    };
    int failed = 0;
    int idx = 0;
    for (const auto& [name, fn] : checks) {
        ++idx;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", idx, name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
    return failed == 0 ? 0 : 1;
}
