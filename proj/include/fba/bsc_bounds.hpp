#ifndef FBA_BSC_BOUNDS_HPP
#define FBA_BSC_BOUNDS_HPP

#include <cmath>
#include <cstddef>

#include "fba/errors.hpp"
#include "fba/llr_spectrum.hpp"
#include "fba/log_arith.hpp"
#include "fba/special_functions.hpp"

namespace fba {

// Random-coding union bound for the BSC, exact over the Hamming-weight
// spectrum:
//   eps_RCU = sum_t C(n,t) p^t (1-p)^{n-t} min{1, (M-1) sum_{s<=t} C(n,s) 2^{-n}}
// log_m is log M in nats; M need not be an integer.
inline LogProb bsc_rcu_eps(std::size_t n, double p, double log_m) {
    if (!(p > 0.0 && p < 0.5)) throw precondition_error("bsc_rcu_eps: p must lie in (0, 1/2)");
    if (log_m < 0.0) throw precondition_error("bsc_rcu_eps: log_m must be nonnegative");
    if (log_m == 0.0) return LogProb::zero(); // a single message never errs
    double log_m_minus_1 = log_m + log1mexp(-log_m);
    LogAccumulator acc;
    double log_cum = neg_inf; // log sum_{s<=t} C(n,s) 2^{-n}
    const double ln2 = std::log(2.0);
    for (std::size_t t = 0; t <= n; ++t) {
        log_cum = log_add(log_cum, log_binomial_coeff(std::int64_t(n), std::int64_t(t)) -
                                       double(n) * ln2);
        double inner = std::min(0.0, log_m_minus_1 + log_cum);
        acc.add(log_binomial_pmf(std::int64_t(n), std::int64_t(t), p) + inner);
    }
    return LogProb(std::min(0.0, acc.log_total()));
}

// Meta-converse for the BSC via the exact Neyman-Pearson beta between the
// channel output given any fixed input and the uniform output distribution:
// log M*(n, eps) <= -log beta_{1-eps}. Symbol-level hypotheses: flip
// probability p against 1/2.
inline double bsc_converse_logm(std::size_t n, double p, double eps) {
    if (!(p > 0.0 && p < 0.5)) throw precondition_error("bsc_converse_logm: p must lie in (0, 1/2)");
    if (!(eps > 0.0 && eps < 1.0)) throw precondition_error("bsc_converse_logm: eps outside (0,1)");
    DiscreteDist channel{1.0 - p, p};
    DiscreteDist uniform{0.5, 0.5};
    return -np_beta_exact_eps(channel, uniform, n, eps).log_value;
}

struct BoundBracket {
    double log_m_achievable = 0.0; // nats
    double log_m_converse = 0.0;   // nats
    double eps_used = 0.0;
};

// Largest log M with eps_RCU <= eps (bisection to 1e-6 nats), paired with the
// converse cap.
inline BoundBracket bracket(std::size_t n, double p, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw precondition_error("bracket: eps outside (0,1)");
    const double log_eps = std::log(eps);
    double lo = 0.0, hi = double(n) * std::log(2.0);
    if (bsc_rcu_eps(n, p, hi).log_value <= log_eps) {
        lo = hi;
    } else {
        while (hi - lo > 1e-6) {
            double mid = 0.5 * (lo + hi);
            if (bsc_rcu_eps(n, p, mid).log_value <= log_eps) lo = mid; else hi = mid;
        }
    }
    BoundBracket b;
    b.log_m_achievable = lo;
    b.log_m_converse = bsc_converse_logm(n, p, eps);
    b.eps_used = eps;
    return b;
}

} // namespace fba

#endif
