#ifndef FBA_BHT_HPP
#define FBA_BHT_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "fba/errors.hpp"
#include "fba/expansion.hpp"
#include "fba/gaussian_tail.hpp"
#include "fba/llr_spectrum.hpp"
#include "fba/moments.hpp"

namespace fba {

// Per-sample moments of the log-likelihood ratio Z = log(P/Q) under P.
// For heterogeneous products the fields hold per-index averages, in which
// case sk is the average of per-index skewnesses (not mu3 / v^{3/2}).
struct BhtMoments {
    double d = 0.0;   // mean (nats)
    double v = 0.0;   // variance (nats^2)
    double sk = 0.0;  // skewness
    double mu3 = 0.0; // third central moment
    double mu4 = 0.0; // fourth central moment
};

inline BhtMoments bht_moments(const DiscreteDist& p, const DiscreteDist& q) {
    if (p.size() != q.size()) throw precondition_error("bht_moments: alphabet size mismatch");
    validate_dist(p);
    validate_dist(q);
    LlrMoments m = llr_moments(p, q);
    BhtMoments b;
    b.d = m.mean;
    b.v = m.var;
    b.mu3 = m.mu3;
    b.mu4 = m.mu4;
    b.sk = m.var > 0.0 ? m.mu3 / std::pow(m.var, 1.5) : 0.0;
    return b;
}

// Averaged moments for a product of non-identical pairs, per-index barred
// quantities: D = avg D_i, V = avg V_i, Sk = avg Sk_i, mu_k = avg mu_{k,i}.
inline BhtMoments bht_moments_avg(const std::vector<std::pair<DiscreteDist, DiscreteDist>>& pairs) {
    if (pairs.empty()) throw precondition_error("bht_moments_avg: empty product");
    BhtMoments b;
    for (const auto& [p, q] : pairs) {
        BhtMoments bi = bht_moments(p, q);
        b.d += bi.d;
        b.v += bi.v;
        b.sk += bi.sk;
        b.mu3 += bi.mu3;
        b.mu4 += bi.mu4;
    }
    double n = double(pairs.size());
    b.d /= n; b.v /= n; b.sk /= n; b.mu3 /= n; b.mu4 /= n;
    return b;
}

// Expansion of the type-II error exponent -log beta_{1-eps}(P^n, Q^n):
//   order 2: n D - sqrt(n V) Q^{-1}(eps) + (1/2) log n
//   order 3: + (Sk sqrt(V)/6 + 1/2) Q^{-1}(eps)^2
//   order 4: - (3 (mu4 - 3V^2) V - 4 mu3^2) / (72 V^{5/2}) * Q^{-1}(eps)^3/sqrt(n)
inline ExpansionResult bht_expansion(const BhtMoments& m, std::size_t n, double eps, int order) {
    if (!(eps > 0.0 && eps < 1.0)) throw precondition_error("bht_expansion: eps outside (0,1)");
    if (order < 2 || order > 4) throw precondition_error("bht_expansion: order must be 2, 3, or 4");
    if (!(m.v > 0.0)) throw precondition_error("bht_expansion: degenerate variance (V = 0)");
    double qi = q_inverse(eps);
    ExpansionResult r;
    r.order = order;
    r.capacity_term = double(n) * m.d;
    r.dispersion_term = -std::sqrt(double(n) * m.v) * qi;
    r.log_term = 0.5 * std::log(double(n));
    if (order >= 3)
        r.skewness_term = (m.sk * std::sqrt(m.v) / 6.0 + 0.5) * qi * qi;
    if (order == 4)
        r.fourth_term = -fourth_order_coeff(m.v, m.mu3, m.mu4) * qi * qi * qi / std::sqrt(double(n));
    r.finalize();
    return r;
}

inline ExpansionResult bht_expansion(const DiscreteDist& p, const DiscreteDist& q, std::size_t n,
                                     double eps, int order) {
    return bht_expansion(bht_moments(p, q), n, eps, order);
}

// Stein exponent: first-order LD approximation n D.
inline double bht_ld_first_order(const DiscreteDist& p, const DiscreteDist& q, std::size_t n) {
    return double(n) * bht_moments(p, q).d;
}

} // namespace fba

#endif
