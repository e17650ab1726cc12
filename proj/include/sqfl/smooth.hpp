#pragma once

namespace sqfl {

enum class WeightSign { minus, plus };

/// Parameters of the smooth weights sigma^-_{k,X,L} and sigma^+_{k,X,L}.
struct SmoothWeightSpec {
    int k = 2;
    double X = 1;
    double L = 0.1;
    WeightSign sign = WeightSign::minus;

    /// Requires k >= 2, X > 0 and 0 < L < X / (2k).
    void validate() const;

    /// [X, 2X] for sigma^-, [X - kL, 2X + kL] for sigma^+.
    double support_lo() const;
    double support_hi() const;
};

inline constexpr int kMaxSmoothingOrder = 40;

/// u_k = u * r_L * ... * r_L (k box convolutions of the unit step):
///   u_k(x) = 1/(k! L^k) sum_{i=0}^{k} (-1)^i C(k,i) (x - iL)_+^k.
/// Zero for x <= 0, one for x >= kL. The explicit sum is used while its
/// cancellation stays below 1e-13; otherwise the convex Irwin-Hall
/// recursion evaluates the same polynomial.
double u_k(double x, int k, double L);

/// The explicit alternating sum alone, in extended precision with
/// compensated summation. Throws Error(instability) when the result leaves
/// [-1e-6, 1 + 1e-6].
double u_k_explicit(double x, int k, double L);

/// sigma^-(x) = u_k(x - X) u_k(2X - x),
/// sigma^+(x) = u_k(x - X + kL) u_k(2X + kL - x).
double sigma(double x, const SmoothWeightSpec& spec);

/// int sigma(x) dx by adaptive quadrature.
double sigma_integral(const SmoothWeightSpec& spec);

/// max over `grid` equispaced support points of |Delta_h^i sigma| / h^i * L^i,
/// with Delta_h^i the i-th central difference. h is the grid spacing unless
/// rounding would dominate, in which case h = 2 * 1e-10^(1/i) * L.
double derivative_bound_check(const SmoothWeightSpec& spec, int i, int grid);

/// Documented bounds on max |u_k^{(i)}| L^i (hence on the sigma check):
/// the i-th derivative of u_k, scaled by L^i, is the (i-1)-th derivative of
/// the Irwin-Hall density of order k. Returns the exact maximum of that
/// piecewise polynomial, evaluated on a fine grid plus knots.
double derivative_bound_constant(int k, int i);

/// |int sigma(x) e(sqrt(x) delta) dx| with e(t) = exp(2 pi i t), computed
/// after the substitution x = t^2 so the phase is linear in t.
double oscillatory_decay_check(const SmoothWeightSpec& spec, double delta);

} // namespace sqfl
