#pragma once

#include "sqfl/error.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <vector>

namespace sqfl {

template <class T>
struct QuadResult {
    T value{};
    double error = 0;
    std::size_t intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }

template <class T, class F>
T gk15(const F& f, double a, double b, double& err)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T kron = fc * kWgk[7];
    T gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const T s = f(c - dx) + f(c + dx);
        kron += s * kWgk[j];
        if (j % 2 == 1)
            gauss += s * kWg[j / 2];
    }
    err = magnitude((kron - gauss) * h);
    return kron * h;
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature. The interval with the
/// largest error estimate is bisected until the summed estimate is below
/// `abs_tol`. `breaks` optionally seeds the initial partition (must be
/// ascending and include both endpoints).
template <class T = double, class F>
QuadResult<T> integrate_adaptive(const F& f, std::vector<double> breaks, double abs_tol,
                                 std::size_t max_intervals = 200000)
{
    struct Piece {
        double a, b;
        T value;
        double err;
        bool operator<(const Piece& o) const { return err < o.err; }
    };

    require(breaks.size() >= 2, ErrorKind::precondition, "quadrature needs at least one interval");
    std::priority_queue<Piece> heap;
    T total{};
    double total_err = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        double e = 0;
        T v = detail::gk15<T>(f, breaks[i], breaks[i + 1], e);
        heap.push({breaks[i], breaks[i + 1], v, e});
        total += v;
        total_err += e;
    }

    while (total_err > abs_tol) {
        if (heap.size() >= max_intervals)
            fail(ErrorKind::budget, "adaptive quadrature exceeded its interval budget");
        Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval cannot be split further in double precision.
            fail(ErrorKind::budget, "adaptive quadrature cannot reach the requested tolerance");
        }
        double el = 0, er = 0;
        T vl = detail::gk15<T>(f, worst.a, mid, el);
        T vr = detail::gk15<T>(f, mid, worst.b, er);
        heap.push({worst.a, mid, vl, el});
        heap.push({mid, worst.b, vr, er});
        total_err += el + er - worst.err;
        total += vl + vr - worst.value;
    }

    // Re-sum from the leaves to drop the drift of incremental updates.
    QuadResult<T> r;
    r.intervals = heap.size();
    T sum{};
    double err = 0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().err;
        heap.pop();
    }
    r.value = sum;
    r.error = err;
    return r;
}

template <class T = double, class F>
QuadResult<T> integrate_adaptive(const F& f, double a, double b, double abs_tol,
                                 std::size_t max_intervals = 200000)
{
    return integrate_adaptive<T>(f, std::vector<double>{a, b}, abs_tol, max_intervals);
}

} // namespace sqfl
