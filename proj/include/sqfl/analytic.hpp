#pragma once

#include <cstdint>

namespace sqfl {

class SieveTable;

/// Riemann zeta on the real line by Euler-Maclaurin with Bernoulli
/// corrections through B12. Valid for s >= 1/2, s != 1 (the formula is the
/// analytic continuation below 1). The cut-off M is the smallest integer
/// for which the first omitted (B14) term drops below `tol`.
double zeta_real(double s, double tol = 1e-14);

/// Same expansion at a caller-chosen cut-off M.
double zeta_euler_maclaurin(double s, std::uint64_t M);

/// Cut-off that zeta_real picks for (s, tol).
std::uint64_t zeta_depth(double s, double tol);

/// sin(pi x) with the argument reduced exactly, so sin_pi(n) == 0 for integer n.
long double sin_pi(long double x);

/// S(x) = sin(pi x) / (pi x), S(0) = 1.
double sinc(double x);

/// sum_{|n| <= N} S(n theta)^2, which tends to 1/theta for 0 < theta <= 1.
double sinc_sum_identity_check(double theta, std::uint64_t N);

/// psi(u) = u - floor(u) - 1/2.
double psi(double u);

/// -sum_{n=1}^{N} sin(2 pi n u) / (pi n): the symmetric Fourier partial sum of psi.
double psi_fourier_partial(double u, std::uint64_t N);

/// Distance from u to the nearest integer.
double dist_to_int(double u);

/// Empirical constant C with |psi - partial| <= C min(1, 1 / (N ||u||)),
/// fitted over 10^4-point u grids for N in {10, 100, 1000} (observed 0.498).
inline constexpr double kPsiFourierConstant = 0.6;

struct SincIntegral {
    double value;      ///< quadrature + tail
    double quadrature; ///< int_0^split
    double tail;       ///< int_split^inf, closed form plus asymptotic series
    double error_bound;
    double split;
};

/// int_0^inf S(y)^2 y^(1/3) dy: adaptive Gauss-Kronrod on [0, split] after
/// the substitution y = t^3, plus an analytic tail.
SincIntegral sinc_integral_detail(double tol, double split = 50.0);
double sinc_integral(double tol = 1e-12);

/// Gamma via the Lanczos approximation (g = 7, 9 coefficients).
double lanczos_gamma(double x);

/// (3 / (8 pi^2)) (2 pi)^(2/3) Gamma(1/3), the same integral in closed form.
double sinc_integral_closed_form();

struct ZetaConstants {
    double z32;    ///< zeta(3/2)
    double z3;     ///< zeta(3)
    double z23;    ///< zeta(2/3), negative
    double z2;     ///< zeta(2)
    double z43;    ///< zeta(4/3)
    double z4;     ///< zeta(4)
    double c_lead; ///< zeta(3/2) / zeta(3)
    double sinc_int;
    double c_conj; ///< zeta(4/3) / zeta(2) * sinc_int

    /// zeta(4/3) / zeta(4) * sinc_int, the variant printed once in the
    /// diagonal-sum derivation. Reported for comparison only.
    double c_conj_zeta4() const { return z43 / z4 * sinc_int; }

    /// 4/3 * c_conj. The residue of zeta(3/2 (1 + s)) at s = -1/3 is 2/3,
    /// which with the 2H/(2 pi i) prefactor gives this constant.
    double c_residue() const { return 4.0 / 3.0 * c_conj; }

    static ZetaConstants compute(double tol = 1e-14);
};

/// sum_{b <= limit} mu^2(b) b^-s over the sieve.
double squarefree_dirichlet_partial(double s, const SieveTable& sieve);

} // namespace sqfl
