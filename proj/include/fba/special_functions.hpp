#ifndef FBA_SPECIAL_FUNCTIONS_HPP
#define FBA_SPECIAL_FUNCTIONS_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "fba/errors.hpp"
#include "fba/gaussian_tail.hpp"
#include "fba/log_arith.hpp"

namespace fba {

inline double log_binomial_coeff(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) throw std::domain_error("log_binomial_coeff: need 0 <= k <= n");
    return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
           std::lgamma(double(n - k) + 1.0);
}

// ln C(n,k) + k ln p + (n-k) ln(1-p); exact at the degenerate p in {0,1}.
inline double log_binomial_pmf(std::int64_t n, std::int64_t k, double p) {
    if (k < 0 || k > n) throw std::domain_error("log_binomial_pmf: need 0 <= k <= n");
    if (p < 0.0 || p > 1.0) throw std::domain_error("log_binomial_pmf: p outside [0,1]");
    if (p == 0.0) return k == 0 ? 0.0 : neg_inf;
    if (p == 1.0) return k == n ? 0.0 : neg_inf;
    return log_binomial_coeff(n, k) + double(k) * std::log(p) +
           double(n - k) * std::log1p(-p);
}

inline double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

namespace detail {

// Continued fraction for the incomplete beta (Lentz's algorithm).
inline double beta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double eps = 1e-15;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) return h;
    }
    throw numerical_error("reg_incomplete_beta: continued fraction did not converge");
}

} // namespace detail

// log I_x(a,b) without underflow; the continued-fraction factor is O(1) and
// only the x^a (1-x)^b prefactor lives in the log domain. Only valid on the
// branch x < (a+1)/(a+b+2); callers use the symmetry I_x(a,b) = 1-I_{1-x}(b,a).
inline double log_reg_incomplete_beta_lower_branch(double a, double b, double x) {
    if (x == 0.0) return neg_inf;
    return a * std::log(x) + b * std::log1p(-x) - std::log(a) - log_beta(a, b) +
           std::log(detail::beta_cf(a, b, x));
}

// Regularized incomplete beta I_x(a,b).
inline double reg_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("reg_incomplete_beta: need a,b > 0");
    if (x < 0.0 || x > 1.0) throw std::domain_error("reg_incomplete_beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    if (x < (a + 1.0) / (a + b + 2.0))
        return std::exp(log_reg_incomplete_beta_lower_branch(a, b, x));
    return 1.0 - std::exp(log_reg_incomplete_beta_lower_branch(b, a, 1.0 - x));
}

inline double log_reg_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("reg_incomplete_beta: need a,b > 0");
    if (x < 0.0 || x > 1.0) throw std::domain_error("reg_incomplete_beta: x outside [0,1]");
    if (x == 0.0) return neg_inf;
    if (x == 1.0) return 0.0;
    if (x < (a + 1.0) / (a + b + 2.0))
        return log_reg_incomplete_beta_lower_branch(a, b, x);
    return log1mexp(log_reg_incomplete_beta_lower_branch(b, a, 1.0 - x));
}

namespace detail {

// 16-point Gauss-Legendre nodes/weights on [-1,1].
struct GaussLegendre16 {
    static constexpr std::array<double, 8> x = {
        0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
        0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
    static constexpr std::array<double, 8> w = {
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
        0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
};

// chi(df) log-density (distribution of sqrt(chi-squared)).
inline double log_chi_pdf(double w, double df) {
    if (w <= 0.0) return neg_inf;
    return (df - 1.0) * std::log(w) - 0.5 * w * w + (1.0 - 0.5 * df) * std::log(2.0) -
           std::lgamma(0.5 * df);
}

// integrate f over [lo,hi] with composite 16-point Gauss-Legendre
template <class F>
double integrate_gl(const F& f, double lo, double hi, int panels) {
    double total = 0.0;
    double width = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = lo + p * width, mid = a + 0.5 * width, half = 0.5 * width;
        double s = 0.0;
        for (int i = 0; i < 8; ++i) {
            double dx = half * GaussLegendre16::x[i];
            s += GaussLegendre16::w[i] * (f(mid + dx) + f(mid - dx));
        }
        total += s * half;
    }
    return total;
}

} // namespace detail

// cdf of the noncentral t distribution: P(rho < t) for
// rho = (G + nc) / (W / sqrt(df)), G ~ N(0,1), W ~ chi(df).
// Evaluated by integrating the Gaussian cdf against the chi density of the
// denominator; stable for df in the hundreds where series forms degrade.
inline double noncentral_t_cdf(double t, int df, double nc) {
    if (df < 1) throw std::domain_error("noncentral_t_cdf: df >= 1 required");
    double c = std::sqrt(double(df));
    double lo = std::max(0.0, c - 14.0), hi = c + 14.0;
    auto f = [&](double w) {
        double z = t * w / c - nc;
        return (1.0 - q_tail(z)) * std::exp(detail::log_chi_pdf(w, df));
    };
    return detail::integrate_gl(f, lo, hi, 96);
}

// density of the noncentral t distribution (same quadrature).
inline double noncentral_t_pdf(double t, int df, double nc) {
    if (df < 1) throw std::domain_error("noncentral_t_pdf: df >= 1 required");
    double c = std::sqrt(double(df));
    double lo = std::max(0.0, c - 14.0), hi = c + 14.0;
    auto f = [&](double w) {
        double z = t * w / c - nc;
        return std::exp(log_std_normal_pdf(z) + detail::log_chi_pdf(w, df)) * (w / c);
    };
    return detail::integrate_gl(f, lo, hi, 96);
}

// Cornish-Fisher approximation to the eps-quantile of a noncentral t
// distribution arising from a dimension-(df+1) sphere with noncentrality
// nc = sqrt(n P): t = k1 - sqrt(k2) (Q^{-1}(eps) - Sk/6 (Q^{-1}(eps)^2 - 1)),
// with the moments expanded in n = df + 1 and P = nc^2 / n.
inline double noncentral_t_quantile_cf(double eps, int df, double nc) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("noncentral_t_quantile_cf: eps outside (0,1)");
    if (df < 1) throw std::domain_error("noncentral_t_quantile_cf: df >= 1 required");
    double n = double(df) + 1.0;
    double P = nc * nc / n;
    double k1 = std::sqrt(n * P) + 0.75 * std::sqrt(P / n);
    double k2 = (1.0 + 0.5 * P) + (2.0 + 19.0 * P / 8.0) / n;
    double sk = (12.0 * std::sqrt(P) + 5.0 * std::pow(P, 1.5)) /
                (std::sqrt(2.0 * n) * std::pow(2.0 + P, 1.5));
    double qi = q_inverse(eps);
    return k1 - std::sqrt(k2) * (qi - sk / 6.0 * (qi * qi - 1.0));
}

} // namespace fba

#endif
