#ifndef FBA_GAUSSIAN_HPP
#define FBA_GAUSSIAN_HPP

#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>

#include "fba/errors.hpp"
#include "fba/expansion.hpp"
#include "fba/gaussian_tail.hpp"
#include "fba/log_arith.hpp"
#include "fba/root_solve.hpp"
#include "fba/special_functions.hpp"

namespace fba {

enum class PowerConstraint { maximal, equal };

// Third-order constants of the power-P Gaussian channel. The maximal-power
// constants satisfy b_upper - b_lower = 1 + C(P) exactly; the equal-power
// pair differs by exactly 1 nat.
struct GaussianParams {
    double power = 0.0;
    double capacity = 0.0;   // C(P) = (1/2) log(1+P)
    double dispersion = 0.0; // V(P) = P(P+2) / (2 (1+P)^2)
    double skewness = 0.0;   // S(P)
    double b_upper = 0.0;
    double b_lower = 0.0;
    double b_upper_eq = 0.0;
    double b_lower_eq = 0.0;
};

inline GaussianParams gaussian_params(double p) {
    if (!(p > 0.0)) throw std::domain_error("gaussian_params: P must be positive");
    GaussianParams g;
    g.power = p;
    g.capacity = 0.5 * std::log1p(p);
    g.dispersion = p * (p + 2.0) / (2.0 * (1.0 + p) * (1.0 + p));
    double denom = 6.0 * (1.0 + p) * (1.0 + p) * (2.0 + p);
    g.skewness = (6.0 + 6.0 * p + 4.0 * p * p + p * p * p) / denom;
    g.b_upper = (9.0 * p + 14.0 * p * p + 5.0 * p * p * p) / denom +
                0.5 * std::log(2.0 * std::numbers::pi_v<double> * p / (1.0 + p));
    g.b_lower = g.b_upper - 1.0 - g.capacity;
    g.b_upper_eq = g.b_upper - g.capacity;
    g.b_lower_eq = g.b_lower;
    return g;
}

// Theorem-4-style expansion: n C - sqrt(n V) Q^{-1}(eps) + (1/2) log n
// + S(P) Q^{-1}(eps)^2 + B, with B picked by side and power constraint.
inline ExpansionResult gaussian_expansion(double p, std::size_t n, double eps, Side side,
                                          PowerConstraint constraint = PowerConstraint::maximal) {
    if (!(eps > 0.0 && eps < 1.0)) throw precondition_error("gaussian_expansion: eps outside (0,1)");
    GaussianParams g = gaussian_params(p);
    double qi = q_inverse(eps);
    ExpansionResult r;
    r.order = 3;
    r.capacity_term = double(n) * g.capacity;
    r.dispersion_term = -std::sqrt(double(n) * g.dispersion) * qi;
    r.log_term = 0.5 * std::log(double(n));
    r.skewness_term = g.skewness * qi * qi;
    if (constraint == PowerConstraint::maximal)
        r.constant_term = side == Side::lower ? g.b_lower : g.b_upper;
    else
        r.constant_term = side == Side::lower ? g.b_lower_eq : g.b_upper_eq;
    r.finalize();
    return r;
}

// log of Area(cap(x0, b)) / Area(S^{n-1}): the fraction of the unit sphere in
// R^n with inner product >= b against a fixed direction. Exact form through
// the regularized incomplete beta; asymptotic form per Shannon's expansion
// n v_n(b) = (n/2) log(1-b^2) - (1/2) log n - (1/2) log(2 pi b^2 (1-b^2)).
struct CapAreaRatio {
    double exact_log_ratio = 0.0;
    double asymptotic_log_ratio = 0.0; // only for b in (0,1)
};

inline double cap_area_exact_log_ratio(std::size_t n, double b) {
    if (n < 3) throw std::domain_error("cap_area_ratio: n >= 3 required");
    if (b <= -1.0 || b >= 1.0) {
        if (b == -1.0) return 0.0; // whole sphere
        throw std::domain_error("cap_area_ratio: b outside [-1, 1)");
    }
    double a = (double(n) - 1.0) / 2.0;
    if (b >= 0.0) {
        double l = log_reg_incomplete_beta(a, 0.5, 1.0 - b * b);
        return l - std::log(2.0);
    }
    // ratio(b) = 1 - ratio(-b)
    double l = log_reg_incomplete_beta(a, 0.5, 1.0 - b * b) - std::log(2.0);
    return log1mexp(l);
}

inline CapAreaRatio cap_area_ratio(std::size_t n, double b) {
    CapAreaRatio r;
    r.exact_log_ratio = cap_area_exact_log_ratio(n, b);
    if (b > 0.0 && b < 1.0) {
        r.asymptotic_log_ratio = double(n) * 0.5 * std::log1p(-b * b) -
                                 0.5 * std::log(double(n)) -
                                 0.5 * std::log(2.0 * std::numbers::pi_v<double> * b * b *
                                                (1.0 - b * b));
    } else {
        r.asymptotic_log_ratio = std::nan("");
    }
    return r;
}

namespace detail {

// d/db of the exact log cap-area ratio, for b in (0,1):
// -2 (1-b^2)^{a-1} / ( B(a, 1/2) I_{1-b^2}(a, 1/2) ) with a = (n-1)/2.
inline double cap_area_exact_log_ratio_deriv(std::size_t n, double b) {
    double a = (double(n) - 1.0) / 2.0;
    double x = 1.0 - b * b;
    double log_i = log_reg_incomplete_beta(a, 0.5, x);
    double log_num = std::log(2.0) + (a - 1.0) * std::log(x) - log_beta(a, 0.5);
    return -std::exp(log_num - log_i);
}

// Shannon threshold: the inner product a with P(<Xhat, Yhat> < a) = target,
// solved through the noncentral-t correspondence
// P(<Xhat,Yhat> < a) = P(rho < sqrt(n-1) a / sqrt(1-a^2)),
// rho ~ noncentral-t(n-1, sqrt(nP)). Seeded with the Cornish-Fisher quantile
// and polished by Newton on the cdf.
inline double solve_inner_product_threshold(std::size_t n, double p, double target) {
    int df = int(n) - 1;
    double nc = std::sqrt(double(n) * p);
    double t0 = noncentral_t_quantile_cf(target, df, nc);
    auto f = [&](double t) {
        return std::pair<double, double>{noncentral_t_cdf(t, df, nc) - target,
                                         noncentral_t_pdf(t, df, nc)};
    };
    NewtonOptions opt;
    opt.tol = 1e-13;
    opt.max_iterations = 60;
    // the CF seed is within O(1/n) of the root; a +-4 window brackets it
    opt.bracket = Bracket{t0 - 4.0, t0 + 4.0};
    double t = newton_solve(f, t0, opt);
    return t / std::sqrt(double(df)) / std::sqrt(1.0 + t * t / double(df));
}

// log-density exponent of <Xhat, Yhat>: f(a) = exp(n u_n(a)),
// u_n(a) = u0(a) + log(n)/(2n) - u1(a)/(2n) + O(n^-2), alpha = sqrt(P)/2.
struct DensityExponent {
    double u = 0.0;  // u_n(a)
    double du = 0.0; // d u_n / da
};

inline DensityExponent density_exponent(std::size_t n, double p, double a) {
    double alpha = 0.5 * std::sqrt(p);
    double aa = alpha * a;
    double s = std::sqrt(1.0 + aa * aa);
    double u0 = 0.5 * std::log1p(-a * a) - 2.0 * alpha * alpha + aa * aa + aa * s +
                std::log(aa + s);
    double u1 = std::log(1.0 + aa * aa + aa * s) + 3.0 * std::log1p(-a * a) +
                std::log(2.0 * std::numbers::pi_v<double>);
    double du0 = -a / (1.0 - a * a) + 2.0 * alpha * alpha * a + alpha * s +
                 alpha * alpha * alpha * a * a / s + alpha / s;
    double du1 = alpha * (s + aa) / (s * s) - 6.0 * a / (1.0 - a * a);
    DensityExponent d;
    double logn_over_2n = 0.5 * std::log(double(n)) / double(n);
    d.u = u0 + logn_over_2n - u1 / (2.0 * double(n));
    d.du = du0 - du1 / (2.0 * double(n));
    return d;
}

} // namespace detail

// Shannon random-coding achievability for codewords uniform on the power
// sphere. The threshold splits eps into a CLT part and an LD part; the LD
// probability P(<Xbar,Yhat> >= <Xhat,Yhat> >= a) is evaluated by Laplace
// integration of the density against the exact cap-area ratio.
inline double shannon_random_coding_logm(std::size_t n, double p, double eps) {
    if (n < 10) throw precondition_error("shannon_random_coding_logm: n >= 10 required");
    if (!(p > 0.0)) throw std::domain_error("shannon_random_coding_logm: P must be positive");
    if (!(eps > 0.0 && eps < 1.0))
        throw precondition_error("shannon_random_coding_logm: eps outside (0,1)");
    GaussianParams g = gaussian_params(p);
    double qi = q_inverse(eps);
    // CLT share of the error: eps_tilde = eps - h
    double log_h = -0.5 * qi * qi -
                   0.5 * std::log(2.0 * std::numbers::pi_v<double> * double(n) * g.dispersion);
    double eps_tilde = eps - std::exp(log_h);
    if (!(eps_tilde > 0.0))
        throw numerical_error("shannon_random_coding_logm: eps too small for the CLT split at this n");
    double a = detail::solve_inner_product_threshold(n, p, eps_tilde);
    detail::DensityExponent de = detail::density_exponent(n, p, a);
    double g_n = de.u + cap_area_exact_log_ratio(n, a) / double(n);
    double dg_n = de.du + detail::cap_area_exact_log_ratio_deriv(n, a) / double(n);
    if (!(dg_n < 0.0))
        throw numerical_error("shannon_random_coding_logm: Laplace exponent not decreasing");
    // M * exp(n g_n(a)) / (-n g_n'(a)) = eps - eps_tilde
    return log_h - double(n) * g_n + std::log(-double(n) * dg_n);
}

// Shannon sphere-packing converse: solve P(<Xhat,Yhat> < a*) = eps, then
// log M = -log of the exact cap-area ratio at a*. The maximal-power variant
// evaluates the equal-power bound at blocklength n + 1.
inline double shannon_sphere_packing_logm(std::size_t n, double p, double eps,
                                          PowerConstraint constraint = PowerConstraint::equal) {
    if (n < 10) throw precondition_error("shannon_sphere_packing_logm: n >= 10 required");
    if (!(p > 0.0)) throw std::domain_error("shannon_sphere_packing_logm: P must be positive");
    if (!(eps > 0.0 && eps < 1.0))
        throw precondition_error("shannon_sphere_packing_logm: eps outside (0,1)");
    std::size_t m = constraint == PowerConstraint::maximal ? n + 1 : n;
    double a = detail::solve_inner_product_threshold(m, p, eps);
    return -cap_area_exact_log_ratio(m, a);
}

} // namespace fba

#endif
