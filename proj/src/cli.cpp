#include "sqfl/cli.hpp"

#include "sqfl/analytic.hpp"
#include "sqfl/cache.hpp"
#include "sqfl/diagonal.hpp"
#include "sqfl/error.hpp"
#include "sqfl/lattice.hpp"
#include "sqfl/sieve.hpp"
#include "sqfl/smooth.hpp"
#include "sqfl/variance.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace sqfl::cli {

namespace {

using json = nlohmann::ordered_json;

const std::map<std::string, Command> kCommands = {
    {"count", Command::count},       {"enumerate", Command::enumerate}, {"variance", Command::variance},
    {"exceptional", Command::exceptional}, {"diagonal", Command::diagonal}, {"constant", Command::constant},
    {"weights", Command::weights},   {"lemmas", Command::lemmas},       {"sweep", Command::sweep},
};

struct Report {
    json config = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    // (series name, points) for --emit-plot-data
    std::vector<std::pair<std::string, std::vector<std::pair<double, double>>>> plots;

    void add_row(std::vector<json> row) { rows.push_back(std::move(row)); }
};

std::string csv_cell(const json& v)
{
    if (v.is_number_float()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_null())
        return "";
    return v.dump();
}

void write_report(const Report& r, Command cmd, Format fmt, std::ostream& os)
{
    if (fmt == Format::json) {
        json doc;
        doc["command"] = to_string(cmd);
        doc["config"] = r.config;
        json rows = json::array();
        for (const auto& row : r.rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < r.columns.size(); ++i)
                obj[r.columns[i]] = row[i];
            rows.push_back(std::move(obj));
        }
        doc["results"] = std::move(rows);
        os << doc.dump(2) << '\n';
        return;
    }
    os << "# command=" << to_string(cmd) << '\n';
    for (const auto& [key, value] : r.config.items())
        os << "# " << key << '=' << csv_cell(value) << '\n';
    for (std::size_t i = 0; i < r.columns.size(); ++i)
        os << (i ? "," : "") << r.columns[i];
    os << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_cell(row[i]);
        os << '\n';
    }
}

void write_plot_data(const Report& r, const std::filesystem::path& path)
{
    std::ofstream f(path);
    if (!f)
        fail(ErrorKind::io, "cannot open plot data file: " + path.string());
    for (const auto& [name, points] : r.plots) {
        f << "# series " << name << '\n';
        char buf[96];
        for (const auto& [x, y] : points) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g\n", x, y);
            f << buf;
        }
        f << '\n';
    }
}

double parse_real(const std::string& s)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(v))
            fail(ErrorKind::parse, "malformed number: " + s);
        return v;
    } catch (const std::logic_error&) {
        fail(ErrorKind::parse, "malformed number: " + s);
    }
}

void base_config(Report& r, const RunConfig& c)
{
    // Thread count is an execution resource and does not change any result;
    // it is left out so reports compare byte-for-byte across thread counts.
    r.config["seed"] = c.seed;
    r.config["format"] = c.format == Format::json ? "json" : "csv";
    if (c.cache_path)
        r.config["cache_path"] = c.cache_path->string();
}

double default_threshold(const Rational& H)
{
    return std::pow(H.to_double(), 0.8995);
}

void cmd_count(const RunConfig& c, Report& r)
{
    const std::uint64_t x = parse_integer(c.x);
    r.config["x"] = x;
    base_config(r, c);
    const auto sieve = load_or_build_sieve(std::max<std::uint64_t>(1, icbrt(x)), c.cache_path);
    const auto zc = ZetaConstants::compute();
    const std::uint64_t q = count_squarefull(x, sieve);
    r.columns = {"x", "Q", "bg_main", "bg_second", "bg_total", "error", "error_over_x16"};
    const auto bg = bateman_grosswald(std::max(1.0, static_cast<double>(x)), zc);
    const double err = static_cast<double>(q) - bg.total;
    r.add_row({x, q, bg.main, bg.second, bg.total, err, err / std::pow(static_cast<double>(x), 1.0 / 6.0)});
}

void cmd_enumerate(const RunConfig& c, Report& r)
{
    const std::uint64_t lo = parse_integer(c.lo.value_or("1"));
    const std::uint64_t hi = parse_integer(c.hi.value_or(c.x));
    r.config["lo"] = lo;
    r.config["hi"] = hi;
    base_config(r, c);
    const auto sieve = load_or_build_sieve(std::max<std::uint64_t>(1, icbrt(hi)), c.cache_path);
    r.columns = {"n", "a", "b"};
    for (const auto& rep : enumerate_squarefull(lo, hi, sieve, c.threads))
        r.add_row({rep.value, rep.a, rep.b});
}

json variance_row(const VarianceReport& v)
{
    return json::array({v.X, v.H.str(), v.center, v.exact, v.mc_estimate, v.mc_stderr, v.mc_samples, v.seed,
                        v.segments, v.prediction, v.ratio,
                        v.threshold ? json(*v.threshold) : json(nullptr), v.exceptional_measure, v.min_count,
                        v.max_count});
}

const std::vector<std::string> kVarianceColumns = {
    "X", "H", "center", "exact", "mc_estimate", "mc_stderr", "mc_samples", "seed", "segments",
    "prediction", "ratio", "threshold", "exceptional_measure", "min_count", "max_count"};

void cmd_variance(const RunConfig& c, Report& r)
{
    const std::uint64_t X = parse_integer(c.x);
    const Rational H = Rational::parse(c.h);
    r.config["x"] = X;
    r.config["h"] = H.str();
    r.config["mc_samples"] = c.samples;
    base_config(r, c);
    if (c.threshold)
        r.config["threshold"] = *c.threshold;
    const auto zc = ZetaConstants::compute();
    const auto p = IntervalParams::make(X, H, zc);
    const auto sieve = load_or_build_sieve(required_sieve_limit(X, H), c.cache_path);
    VarianceOptions opts;
    opts.threads = c.threads;
    opts.mc_samples = c.samples;
    opts.seed = c.seed;
    opts.threshold = c.threshold;
    const auto v = variance_exact(p, sieve, zc, opts);
    r.columns = kVarianceColumns;
    std::vector<json> row;
    for (auto& cell : variance_row(v))
        row.push_back(cell);
    r.add_row(std::move(row));
}

void cmd_exceptional(const RunConfig& c, Report& r)
{
    const std::uint64_t X = parse_integer(c.x);
    const Rational H = Rational::parse(c.h);
    const double t = c.threshold.value_or(default_threshold(H));
    r.config["x"] = X;
    r.config["h"] = H.str();
    r.config["threshold"] = t;
    base_config(r, c);
    const auto zc = ZetaConstants::compute();
    const auto p = IntervalParams::make(X, H, zc);
    const auto sieve = load_or_build_sieve(required_sieve_limit(X, H), c.cache_path);
    VarianceOptions opts;
    opts.threads = c.threads;
    opts.threshold = t;
    const auto v = variance_exact(p, sieve, zc, opts);
    r.columns = {"X", "H", "threshold", "measure", "variance", "chebyshev_bound"};
    r.add_row({X, H.str(), t, v.exceptional_measure, v.exact, t > 0 ? json(v.exact / (t * t)) : json(nullptr)});
}

void cmd_diagonal(const RunConfig& c, Report& r)
{
    const double H = parse_real(c.h);
    const auto zc = ZetaConstants::compute();
    const double X = c.saturated ? std::numeric_limits<double>::infinity() : parse_real(c.x);
    r.config["x"] = c.saturated ? json("inf") : json(X);
    r.config["h"] = H;
    r.config["lambda"] = c.lambda;
    r.config["tail_tol"] = c.tol;
    r.config["saturated"] = c.saturated;
    r.config["with_variance"] = c.with_variance;
    base_config(r, c);
    if (c.saturated && c.with_variance)
        fail(ErrorKind::precondition, "--with-variance needs a finite X");
    DiagonalResult d;
    DiagonalParams dp;
    if (c.saturated) {
        const auto sieve = load_or_build_sieve(saturation_cut(H), c.cache_path);
        d = diagonal_saturated(H, sieve, zc, c.tol, c.threads);
    } else {
        dp = DiagonalParams::make(H, c.lambda, X, c.tol);
        const auto sieve = load_or_build_sieve(std::max<std::uint64_t>(dp.b_max, 1), c.cache_path);
        d = diagonal_sum(dp, sieve, zc, c.threads);
    }
    r.columns = {"X", "H", "lambda", "b_max", "value", "truncation_bound", "prediction", "rel_err",
                 "prediction_zeta4", "rel_err_zeta4", "prediction_residue", "rel_err_residue",
                 "env_h3lambda", "env_h2m3lambda", "env_h02468", "big_b_shape"};
    std::vector<json> row = {X, H, c.lambda, d.b_max, d.value, d.truncation_bound, d.prediction, d.rel_err,
                             d.prediction_zeta4, d.rel_err_zeta4, d.prediction_residue, d.rel_err_residue,
                             d.env_h3lambda, d.env_h2m3lambda, d.env_h02468, d.big_b_shape};
    if (c.with_variance) {
        const std::uint64_t Xi = parse_integer(c.x);
        const Rational Hr = Rational::parse(c.h);
        const auto big = load_or_build_sieve(std::max(dp.b_max, required_sieve_limit(Xi, Hr)), c.cache_path);
        const auto dv = diagonal_vs_variance(Xi, Hr, big, zc, c.threads);
        r.columns.insert(r.columns.end(), {"variance", "diag_over_variance"});
        row.push_back(dv.var);
        row.push_back(dv.ratio);
    }
    r.add_row(std::move(row));
}

void cmd_constant(const RunConfig& c, Report& r)
{
    const double tol = std::min(c.tol, 1e-6);
    r.config["tol"] = tol;
    base_config(r, c);
    const auto zc = ZetaConstants::compute(tol);
    const auto si = sinc_integral_detail(1e-12);
    r.columns = {"name", "value"};
    r.add_row({"zeta(3/2)", zc.z32});
    r.add_row({"zeta(3)", zc.z3});
    r.add_row({"zeta(2/3)", zc.z23});
    r.add_row({"zeta(2)", zc.z2});
    r.add_row({"zeta(4/3)", zc.z43});
    r.add_row({"zeta(4)", zc.z4});
    r.add_row({"c_lead", zc.c_lead});
    r.add_row({"sinc_integral_quadrature", si.value});
    r.add_row({"sinc_integral_error_bound", si.error_bound});
    r.add_row({"sinc_integral_closed_form", sinc_integral_closed_form()});
    r.add_row({"c_conj", zc.c_conj});
    r.add_row({"c_conj_zeta4", zc.c_conj_zeta4()});
    r.add_row({"c_residue", zc.c_residue()});
}

void cmd_weights(const RunConfig& c, Report& r)
{
    const double X = parse_real(c.x);
    SmoothWeightSpec spec;
    spec.k = c.k;
    spec.X = X;
    spec.L = c.L.value_or(X / (4.0 * c.k));
    if (c.sign != "minus" && c.sign != "plus")
        fail(ErrorKind::parse, "--sign must be minus or plus");
    spec.sign = c.sign == "plus" ? WeightSign::plus : WeightSign::minus;
    spec.validate();
    r.config["x"] = X;
    r.config["k"] = spec.k;
    r.config["L"] = spec.L;
    r.config["sign"] = c.sign;
    base_config(r, c);

    r.columns = {"name", "value"};
    const double kl = spec.k * spec.L;
    double plateau_gap = 0;
    for (int g = 0; g <= 1000; ++g) {
        const double x = kl * (1 + g / 100.0);
        plateau_gap = std::max(plateau_gap, std::fabs(u_k(x, spec.k, spec.L) - 1));
    }
    r.add_row({"plateau_max_gap", plateau_gap});
    const double integral = sigma_integral(spec);
    r.add_row({"integral", integral});
    r.add_row({"integral_minus_X", integral - X});
    for (int i = 1; i <= spec.k - 1; ++i) {
        r.add_row({"derivative_max_" + std::to_string(i), derivative_bound_check(spec, i, 10000)});
        r.add_row({"derivative_const_" + std::to_string(i), derivative_bound_constant(spec.k, i)});
    }
    for (double m : {0.0, 1.0, 10.0, 100.0}) {
        const double delta = m / std::sqrt(X);
        r.add_row({"decay_over_X_delta_" + std::to_string(static_cast<int>(m)) + "_over_sqrtX",
                   oscillatory_decay_check(spec, delta) / X});
    }
    std::vector<std::pair<double, double>> pts;
    const double lo = spec.support_lo() - kl;
    const double hi = spec.support_hi() + kl;
    for (int g = 0; g <= 2000; ++g) {
        const double x = lo + (hi - lo) * g / 2000.0;
        pts.emplace_back(x, sigma(x, spec));
    }
    r.plots.emplace_back("sigma", std::move(pts));
}

void cmd_lemmas(const RunConfig& c, Report& r)
{
    const std::uint64_t x = parse_integer(c.x);
    const Rational H = Rational::parse(c.h);
    const double eps0 = c.eps0.value_or(default_eps0(H));
    const double A = c.A ? static_cast<double>(*c.A) : std::floor(std::pow(static_cast<double>(x), 0.18));
    r.config["x"] = x;
    r.config["h"] = H.str();
    r.config["eps0"] = eps0;
    r.config["A"] = A;
    base_config(r, c);
    const auto zc = ZetaConstants::compute();
    const auto sieve = load_or_build_sieve(icbrt(interval_upper(x, H)), c.cache_path);
    const auto l2 = lemma2_check(x, H, eps0, sieve, zc);
    r.columns = {"name", "value"};
    r.add_row({"count", l2.count});
    r.add_row({"main_term", l2.main_term});
    r.add_row({"R1", l2.R1});
    r.add_row({"R2", l2.R2});
    r.add_row({"deviation", l2.deviation});
    r.add_row({"envelope", l2.envelope});
    r.add_row({"ratio", l2.ratio});
    r.add_row({"in_hypothesis", l2.in_hypothesis});
    for (RKind which : {RKind::R1, RKind::R2}) {
        const auto m = prop_medium_params(static_cast<double>(x), H.to_double(), A, which);
        const std::string tag = to_string(which);
        r.add_row({tag + "_N", m.N});
        r.add_row({tag + "_Delta", m.Delta});
        r.add_row({tag + "_delta", m.delta});
        r.add_row({tag + "_eligible", m.eligible});
    }
}

void cmd_sweep(const RunConfig& c, Report& r)
{
    const std::uint64_t X = parse_integer(c.x);
    if (c.h_grid.empty())
        fail(ErrorKind::parse, "sweep needs --h-grid");
    std::vector<Rational> grid;
    for (const auto& s : c.h_grid)
        grid.push_back(Rational::parse(s));
    r.config["x"] = X;
    json hs = json::array();
    for (const auto& h : grid)
        hs.push_back(h.str());
    r.config["h_grid"] = hs;
    base_config(r, c);
    const auto zc = ZetaConstants::compute();
    std::uint64_t limit = 1;
    for (const auto& h : grid)
        limit = std::max(limit, required_sieve_limit(X, h));
    const auto sieve = load_or_build_sieve(limit, c.cache_path);

    r.columns = {"H", "exact", "prediction", "ratio", "segments", "threshold", "exceptional_measure"};
    std::vector<std::pair<double, double>> exact_pts, pred_pts;
    for (const auto& h : grid) {
        const auto p = IntervalParams::make(X, h, zc);
        VarianceOptions opts;
        opts.threads = c.threads;
        opts.threshold = default_threshold(h);
        const auto v = variance_exact(p, sieve, zc, opts);
        r.add_row({h.str(), v.exact, v.prediction, v.ratio, v.segments, *opts.threshold, v.exceptional_measure});
        exact_pts.emplace_back(h.to_double(), v.exact);
        pred_pts.emplace_back(h.to_double(), v.prediction);
    }
    r.plots.emplace_back("exact", std::move(exact_pts));
    r.plots.emplace_back("prediction", std::move(pred_pts));
}

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::parse:
        return kExitParse;
    case ErrorKind::precondition:
    case ErrorKind::domain:
    case ErrorKind::pole:
    case ErrorKind::hypothesis:
    case ErrorKind::sieve_too_small:
        return kExitPrecondition;
    case ErrorKind::budget:
    case ErrorKind::capacity:
        return kExitBudget;
    default:
        return kExitOther;
    }
}

void error_record(std::ostream& err, std::string_view kind, const std::string& message, int code)
{
    json rec;
    rec["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
    err << rec.dump() << '\n';
}

} // namespace

std::string to_string(Command c)
{
    for (const auto& [name, cmd] : kCommands)
        if (cmd == c)
            return name;
    return "unknown";
}

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Squarefull numbers in short intervals: counts, variance, diagonal sums, weights, lemmas"};
    app.set_help_flag("--help", "print this help and exit");
    RunConfig c;
    std::string command;
    std::string format = "json";
    std::string cache, out_path, plot;
    std::optional<double> eps0, threshold, L;
    std::optional<std::uint64_t> A;
    std::vector<std::string> keys;
    for (const auto& kv : kCommands)
        keys.push_back(kv.first);

    app.add_option("command", command, "count | enumerate | variance | exceptional | diagonal | constant | "
                                       "weights | lemmas | sweep")
        ->required()
        ->check(CLI::IsMember(keys));
    app.add_option("--x", c.x, "X (or x), decimal integer such as 1e10");
    app.add_option("--h", c.h, "H, decimal with at most six fractional digits");
    app.add_option("--lo", c.lo, "enumerate: lower bound");
    app.add_option("--hi", c.hi, "enumerate: upper bound");
    app.add_option("--lambda", c.lambda, "diagonal b cut-off exponent");
    app.add_option("--eps0", eps0, "lemmas: eps0 (default H^-0.1005)");
    app.add_option("--tol", c.tol, "tolerance (diagonal tail, zeta)");
    app.add_option("--mc-samples,--samples", c.samples, "Monte Carlo samples (0 disables)");
    app.add_option("--seed", c.seed, "Monte Carlo seed");
    app.add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--threshold", threshold, "exceptional-set threshold (default H^0.8995)");
    app.add_option("--h-grid", c.h_grid, "sweep: comma-separated H values")->delimiter(',');
    app.add_option("--k", c.k, "weights: smoothing order");
    app.add_option("--l", L, "weights: mollification length (default X/(4k))");
    app.add_option("--sign", c.sign, "weights: minus | plus");
    app.add_option("--a", A, "lemmas: dyadic block start A (default x^0.18)");
    app.add_flag("--with-variance", c.with_variance, "diagonal: also run the exact variance");
    app.add_flag("--saturated", c.saturated, "diagonal: take b_max to infinity (X is ignored)");
    app.add_option("--cache", cache, "sieve cache file");
    app.add_option("--out", out_path, "report file (default stdout)");
    app.add_option("--emit-plot-data", plot, "two-column plot data file");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return {std::nullopt, app.exit(e, out, err)};
    } catch (const CLI::ParseError& e) {
        error_record(err, "parse", e.what(), kExitParse);
        return {std::nullopt, kExitParse};
    }

    c.command = kCommands.at(command);
    c.format = format == "csv" ? Format::csv : Format::json;
    c.eps0 = eps0;
    c.threshold = threshold;
    c.L = L;
    c.A = A;
    if (!cache.empty())
        c.cache_path = cache;
    if (!out_path.empty())
        c.out_path = out_path;
    if (!plot.empty())
        c.plot_path = plot;
    return {c, kExitOk};
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    try {
        Report r;
        switch (c.command) {
        case Command::count: cmd_count(c, r); break;
        case Command::enumerate: cmd_enumerate(c, r); break;
        case Command::variance: cmd_variance(c, r); break;
        case Command::exceptional: cmd_exceptional(c, r); break;
        case Command::diagonal: cmd_diagonal(c, r); break;
        case Command::constant: cmd_constant(c, r); break;
        case Command::weights: cmd_weights(c, r); break;
        case Command::lemmas: cmd_lemmas(c, r); break;
        case Command::sweep: cmd_sweep(c, r); break;
        }
        if (c.out_path) {
            std::ofstream f(*c.out_path, std::ios::binary | std::ios::trunc);
            if (!f)
                fail(ErrorKind::io, "cannot open report file: " + c.out_path->string());
            write_report(r, c.command, c.format, f);
        } else {
            write_report(r, c.command, c.format, out);
        }
        if (c.plot_path)
            write_plot_data(r, *c.plot_path);
        return kExitOk;
    } catch (const Error& e) {
        const int code = exit_code_for(e.kind());
        error_record(err, to_string(e.kind()), e.what(), code);
        return code;
    } catch (const std::exception& e) {
        error_record(err, "internal", e.what(), kExitOther);
        return kExitOther;
    }
}

} // namespace sqfl::cli
