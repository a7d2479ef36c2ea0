#pragma once

// Independent reference values for the tests: direct densities and
// adaptive Gauss-Kronrod integration (Boost), no Mellin-Barnes anywhere.

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace oracle {

inline double gg_pdf(double alpha, double beta, double omega, double x) {
    if (x <= 0.0) return 0.0;
    const double r = beta / omega;
    return std::exp(std::log(alpha) + (alpha * beta - 1.0) * std::log(x) + beta * std::log(r) -
                    r * std::pow(x, alpha) - std::lgamma(beta));
}

/// int_0^inf f(x) dx via x = e^u over u in [u_lo, u_hi].
template <class F>
double integrate_positive(F f, double u_lo = -30.0, double u_hi = 6.0, double tol = 1e-10) {
    auto g = [&](double u) {
        const double x = std::exp(u);
        return f(x) * x;
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, u_lo, u_hi, 12, tol);
}

/// log of a point beyond which the mass is below eps (Markov with E[X^k]).
inline double log_tail_cut(double moment_k, double k, double eps = 1e-11) {
    return (std::log(moment_k) - std::log(eps)) / k;
}

/// Density of X1 X2 with independent GG factors, by Mellin convolution.
inline double dgg_pdf(double a1, double b1, double o1, double a2, double b2, double o2, double x) {
    return integrate_positive(
        [&](double u) { return gg_pdf(a1, b1, o1, u) * gg_pdf(a2, b2, o2, x / u) / u; }, -25.0, 5.0,
        1e-12);
}

inline double q_func(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

}  // namespace oracle
