#include "sqfl/analytic.hpp"
#include "sqfl/cli.hpp"
#include "sqfl/diagonal.hpp"
#include "sqfl/error.hpp"
#include "sqfl/lattice.hpp"
#include "sqfl/sieve.hpp"
#include "sqfl/smooth.hpp"
#include "sqfl/variance.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace py::literals;
using namespace sqfl;

namespace {

const ZetaConstants& zc()
{
    static const ZetaConstants z = ZetaConstants::compute();
    return z;
}

SieveTable sieve_for(std::uint64_t x) { return SieveTable::build(std::max<std::uint64_t>(icbrt(x), 1)); }

Rational as_rational(const py::object& h)
{
    if (py::isinstance<py::str>(h))
        return Rational::parse(h.cast<std::string>());
    if (py::isinstance<py::int_>(h))
        return Rational(h.cast<std::int64_t>(), 1);
    return Rational::from_double(h.cast<double>());
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Squarefull numbers in short intervals";

    static py::exception<Error> error_type(m, "SqflError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
            inst.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error_type.ptr(), inst.ptr());
        }
    });

    m.def("count_squarefull", [](std::uint64_t x) { return count_squarefull(x, sieve_for(x)); }, py::arg("x"),
          "Q(x), the number of squarefull n <= x.");

    m.def(
        "enumerate_squarefull",
        [](std::uint64_t lo, std::uint64_t hi, unsigned threads) {
            std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> out;
            for (const auto& r : enumerate_squarefull(lo, hi, sieve_for(hi), threads))
                out.emplace_back(r.value, r.a, r.b);
            return out;
        },
        py::arg("lo"), py::arg("hi"), py::arg("threads") = 1, "Squarefull n in [lo, hi] as (n, a, b), n = a^2 b^3.");

    m.def(
        "short_interval_count",
        [](std::uint64_t x, const py::object& H) {
            const auto h = as_rational(H);
            return short_interval_count(x, h, sieve_for(interval_upper(x, h)));
        },
        py::arg("x"), py::arg("H"));

    m.def(
        "bateman_grosswald",
        [](double x) {
            const auto b = bateman_grosswald(x, zc());
            return py::dict("main"_a = b.main, "second"_a = b.second, "total"_a = b.total);
        },
        py::arg("x"));

    m.def("zeta", [](double s, double tol) { return zeta_real(s, tol); }, py::arg("s"), py::arg("tol") = 1e-14);

    m.def("zeta_constants", [] {
        const auto& z = zc();
        return py::dict("zeta_3_2"_a = z.z32, "zeta_3"_a = z.z3, "zeta_2_3"_a = z.z23, "zeta_2"_a = z.z2,
                        "zeta_4_3"_a = z.z43, "c_lead"_a = z.c_lead, "sinc_integral"_a = z.sinc_int,
                        "c_conj"_a = z.c_conj, "c_residue"_a = z.c_residue());
    });

    m.def(
        "variance",
        [](std::uint64_t X, const py::object& H, std::uint64_t mc_samples, std::uint64_t seed, unsigned threads,
           std::optional<double> threshold) {
            const auto h = as_rational(H);
            const auto sieve = SieveTable::build(required_sieve_limit(X, h));
            VarianceReport r;
            {
                py::gil_scoped_release release;
                r = variance_exact(IntervalParams::make(X, h, zc()), sieve, zc(),
                                   {threads, mc_samples, seed, threshold});
            }
            py::dict d("X"_a = r.X, "H"_a = r.H.str(), "center"_a = r.center, "exact"_a = r.exact,
                       "prediction"_a = r.prediction, "ratio"_a = r.ratio, "segments"_a = r.segments,
                       "exceptional_measure"_a = r.exceptional_measure, "min_count"_a = r.min_count,
                       "max_count"_a = r.max_count);
            if (mc_samples > 0) {
                d["mc_estimate"] = r.mc_estimate;
                d["mc_stderr"] = r.mc_stderr;
            }
            return d;
        },
        py::arg("X"), py::arg("H"), py::arg("mc_samples") = 0, py::arg("seed") = 0, py::arg("threads") = 1,
        py::arg("threshold") = py::none(), "Exact variance of short-interval counts over [X, 2X].");

    m.def(
        "exceptional_measure",
        [](std::uint64_t X, const py::object& H, double threshold) {
            const auto h = as_rational(H);
            return exceptional_measure(IntervalParams::make(X, h, zc()), threshold,
                                       SieveTable::build(required_sieve_limit(X, h)));
        },
        py::arg("X"), py::arg("H"), py::arg("threshold"));

    m.def(
        "inner_sinc_sum",
        [](double theta, double tol) {
            const auto r = inner_sinc_sum(theta, tol);
            return py::make_tuple(r.value, r.tail_bound);
        },
        py::arg("theta"), py::arg("tol") = 1e-10, "sum_{n>=1} S(n theta)^2 and its certified tail bound.");

    m.def(
        "diagonal_saturated",
        [](double H) {
            const auto r = diagonal_saturated(H, SieveTable::build(saturation_cut(H)), zc());
            return py::dict("value"_a = r.value, "prediction"_a = r.prediction,
                            "prediction_residue"_a = r.prediction_residue, "rel_err"_a = r.rel_err,
                            "rel_err_residue"_a = r.rel_err_residue, "truncation_bound"_a = r.truncation_bound);
        },
        py::arg("H"));

    m.def("u_k", &u_k, py::arg("x"), py::arg("k"), py::arg("L"));

    m.def(
        "sigma",
        [](double x, int k, double X, double L, const std::string& sign) {
            if (sign != "minus" && sign != "plus")
                throw Error(ErrorKind::parse, "sign must be minus or plus");
            SmoothWeightSpec s;
            s.k = k;
            s.X = X;
            s.L = L;
            s.sign = sign == "plus" ? WeightSign::plus : WeightSign::minus;
            s.validate();
            return sigma(x, s);
        },
        py::arg("x"), py::arg("k"), py::arg("X"), py::arg("L"), py::arg("sign") = "minus");

    m.def(
        "count_near_curve",
        [](const std::string& curve, std::uint64_t A, double N, double delta) {
            if (curve != "inv23" && curve != "inv32")
                throw Error(ErrorKind::parse, "curve must be inv23 or inv32");
            return count_near_curve({curve == "inv23" ? Curve::inv23 : Curve::inv32, A, N, delta});
        },
        py::arg("curve"), py::arg("A"), py::arg("N"), py::arg("delta"));

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "sqfl");
            std::vector<const char*> argv;
            for (const auto& a : args)
                argv.push_back(a.c_str());
            std::ostringstream out, err;
            const auto parsed = cli::parse_args(static_cast<int>(argv.size()), argv.data(), out, err);
            const int code = parsed.config ? cli::run(*parsed.config, out, err) : parsed.exit_code;
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
