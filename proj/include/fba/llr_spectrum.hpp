#ifndef FBA_LLR_SPECTRUM_HPP
#define FBA_LLR_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "fba/errors.hpp"
#include "fba/log_arith.hpp"
#include "fba/special_functions.hpp"

namespace fba {

// Probability vector over a small common alphabet.
using DiscreteDist = std::vector<double>;

inline void validate_dist(const DiscreteDist& d) {
    double s = 0.0;
    for (double v : d) {
        if (v < 0.0) throw precondition_error("distribution has a negative entry");
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-12) throw precondition_error("distribution does not sum to 1");
}

// Exact distribution of the block log-likelihood-ratio sum of n i.i.d.
// symbols, under both hypotheses. Support holds the finite LLR values in
// strictly increasing order; symbols with P = 0 < Q contribute a separate
// point at -infinity carrying Q-mass only.
struct LlrSpectrum {
    std::vector<double> support;       // strictly increasing, finite
    std::vector<double> log_probs_p;   // log-probability under P^n
    std::vector<double> log_probs_q;   // log-probability under Q^n
    double log_q_at_minus_inf = neg_inf; // Q-mass on blocks with LLR = -inf
    std::optional<double> lattice_span;

    std::size_t size() const { return support.size(); }

    void validate(double tol = 1e-10) const {
        for (std::size_t i = 1; i < support.size(); ++i)
            if (!(support[i] > support[i - 1]))
                throw numerical_error("LlrSpectrum: support not strictly increasing");
        double tp = log_sum_exp(log_probs_p);
        std::vector<double> q = log_probs_q;
        q.push_back(log_q_at_minus_inf);
        double tq = log_sum_exp(q);
        if (std::abs(tp) > tol || std::abs(tq) > tol)
            throw numerical_error("LlrSpectrum: probabilities do not sum to 1");
    }
};

namespace detail {

inline constexpr double llr_merge_tol = 1e-12;   // absolute, on LLR values
inline constexpr std::size_t composition_limit = 2'000'000;

struct SymbolLlr {
    double z;      // log(p/q), finite
    double log_p;  // log p
    double log_q;  // log q
};

// span detection: all pairwise LLR differences integer multiples of one h
inline std::optional<double> detect_span(const std::vector<double>& z) {
    double h = 0.0;
    for (std::size_t i = 1; i < z.size(); ++i) {
        double d = std::abs(z[i] - z[0]);
        if (d < llr_merge_tol) continue;
        if (h == 0.0) { h = d; continue; }
        // real-valued gcd with tolerance
        double a = std::max(h, d), b = std::min(h, d);
        for (int it = 0; it < 64 && b > llr_merge_tol; ++it) {
            double r = std::fmod(a, b);
            if (r > b - llr_merge_tol) r = 0.0;
            a = b;
            b = r;
        }
        h = a;
    }
    if (h == 0.0) return std::nullopt;
    for (std::size_t i = 1; i < z.size(); ++i) {
        double m = (z[i] - z[0]) / h;
        if (std::abs(m - std::round(m)) > 1e-6) return std::nullopt;
    }
    return h;
}

inline LlrSpectrum spectrum_by_lattice(const std::vector<SymbolLlr>& sym, std::size_t n,
                                       double span) {
    // indices of each symbol on the lattice anchored at the smallest LLR
    double zmin = sym[0].z;
    for (const auto& s : sym) zmin = std::min(zmin, s.z);
    std::vector<std::int64_t> idx(sym.size());
    std::int64_t max_idx = 0;
    for (std::size_t j = 0; j < sym.size(); ++j) {
        idx[j] = std::int64_t(std::llround((sym[j].z - zmin) / span));
        max_idx = std::max(max_idx, idx[j]);
    }
    std::size_t width = std::size_t(max_idx) * n + 1;
    if (width > composition_limit)
        throw precondition_error("np spectrum: lattice too wide for exact convolution");
    std::vector<double> lp(width, neg_inf), lq(width, neg_inf);
    lp[0] = 0.0;
    lq[0] = 0.0;
    std::vector<double> nlp, nlq;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t cur = std::size_t(max_idx) * step + 1;
        nlp.assign(cur + std::size_t(max_idx), neg_inf);
        nlq.assign(cur + std::size_t(max_idx), neg_inf);
        for (std::size_t i = 0; i < cur; ++i) {
            if (lp[i] == neg_inf && lq[i] == neg_inf) continue;
            for (std::size_t j = 0; j < sym.size(); ++j) {
                std::size_t k = i + std::size_t(idx[j]);
                if (lp[i] != neg_inf && sym[j].log_p != neg_inf)
                    nlp[k] = log_add(nlp[k], lp[i] + sym[j].log_p);
                if (lq[i] != neg_inf) nlq[k] = log_add(nlq[k], lq[i] + sym[j].log_q);
            }
        }
        lp.swap(nlp);
        lq.swap(nlq);
    }
    LlrSpectrum out;
    out.lattice_span = span;
    for (std::size_t i = 0; i < lp.size(); ++i) {
        if (lp[i] == neg_inf && lq[i] == neg_inf) continue;
        out.support.push_back(double(n) * zmin + double(i) * span);
        out.log_probs_p.push_back(lp[i]);
        out.log_probs_q.push_back(lq[i]);
    }
    return out;
}

inline LlrSpectrum spectrum_by_composition(const std::vector<SymbolLlr>& sym, std::size_t n) {
    const std::size_t k = sym.size();
    // number of compositions of n into k parts: C(n+k-1, k-1)
    double count = 1.0;
    for (std::size_t i = 1; i < k; ++i) count *= double(n + i) / double(i);
    if (count > double(composition_limit))
        throw precondition_error("np spectrum: alphabet/blocklength too large for type enumeration");

    struct Point {
        double z, lp, lq;
    };
    std::vector<Point> pts;
    pts.reserve(std::size_t(count) + 1);
    std::vector<std::size_t> counts(k, 0);
    double log_n_fact = std::lgamma(double(n) + 1.0);
    // iterate over all count vectors summing to n
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
        if (pos + 1 == k) {
            counts[pos] = left;
            double z = 0.0, lp = log_n_fact, lq = log_n_fact;
            for (std::size_t j = 0; j < k; ++j) {
                if (counts[j] == 0) continue;
                z += double(counts[j]) * sym[j].z;
                double lf = std::lgamma(double(counts[j]) + 1.0);
                lp += double(counts[j]) * sym[j].log_p - lf;
                lq += double(counts[j]) * sym[j].log_q - lf;
            }
            pts.push_back({z, lp, lq});
            return;
        }
        for (std::size_t c = 0; c <= left; ++c) {
            counts[pos] = c;
            rec(pos + 1, left - c);
        }
    };
    rec(0, n);
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.z < b.z; });

    LlrSpectrum out;
    for (const Point& p : pts) {
        if (!out.support.empty() && p.z - out.support.back() <= llr_merge_tol) {
            out.log_probs_p.back() = log_add(out.log_probs_p.back(), p.lp);
            out.log_probs_q.back() = log_add(out.log_probs_q.back(), p.lq);
        } else {
            out.support.push_back(p.z);
            out.log_probs_p.push_back(p.lp);
            out.log_probs_q.push_back(p.lq);
        }
    }
    std::vector<double> zs(k);
    for (std::size_t j = 0; j < k; ++j) zs[j] = sym[j].z;
    out.lattice_span = detect_span(zs);
    return out;
}

} // namespace detail

// Exact block LLR spectrum of n i.i.d. draws: P against Q on a common
// alphabet of size <= 4, by lattice convolution when the per-symbol LLRs are
// commensurable and by type-class enumeration otherwise.
inline LlrSpectrum build_llr_spectrum(const DiscreteDist& p, const DiscreteDist& q,
                                      std::size_t n) {
    if (p.size() != q.size()) throw precondition_error("np spectrum: alphabet size mismatch");
    if (p.size() > 4) throw precondition_error("np spectrum: alphabets larger than 4 unsupported");
    if (n == 0) throw precondition_error("np spectrum: n must be positive");
    validate_dist(p);
    validate_dist(q);

    std::vector<detail::SymbolLlr> sym;
    double log_q_dead = neg_inf; // per-symbol Q-mass on p = 0 symbols
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) {
            if (q[i] > 0.0) log_q_dead = log_add(log_q_dead, std::log(q[i]));
            continue;
        }
        if (q[i] == 0.0)
            throw precondition_error("np spectrum: P not absolutely continuous w.r.t. Q");
        sym.push_back({std::log(p[i] / q[i]), std::log(p[i]), std::log(q[i])});
    }
    LlrSpectrum spec;
    std::vector<double> zs(sym.size());
    for (std::size_t j = 0; j < sym.size(); ++j) zs[j] = sym[j].z;
    std::optional<double> span = detail::detect_span(zs);
    if (sym.size() == 1) {
        spec.support = {double(n) * sym[0].z};
        spec.log_probs_p = {double(n) * sym[0].log_p};
        spec.log_probs_q = {double(n) * sym[0].log_q};
    } else if (span) {
        spec = detail::spectrum_by_lattice(sym, n, *span);
    } else {
        spec = detail::spectrum_by_composition(sym, n);
    }
    // blocks containing at least one dead symbol sit at LLR = -inf under Q;
    // the finite part carries Q-mass (1 - q_dead)^n
    if (log_q_dead != neg_inf)
        spec.log_q_at_minus_inf = log1mexp(double(n) * log1mexp(log_q_dead));
    spec.validate();
    return spec;
}

namespace detail {

// cumulative log-sums: prefix_excl[i] = log sum_{j<i}, suffix_excl[i] = log sum_{j>i}
inline std::vector<double> prefix_excl(const std::vector<double>& lp) {
    std::vector<double> out(lp.size() + 1, neg_inf);
    for (std::size_t i = 0; i < lp.size(); ++i) out[i + 1] = log_add(out[i], lp[i]);
    return out;
}

inline std::vector<double> suffix_excl(const std::vector<double>& lp) {
    std::vector<double> out(lp.size() + 1, neg_inf);
    for (std::size_t i = lp.size(); i-- > 0;) out[i] = log_add(out[i + 1], lp[i]);
    // out[i] = sum_{j >= i}; shift to exclusive on return-by-index usage
    return out; // caller indexes out[i+1] for "strictly above i"
}

} // namespace detail

// Minimum type-II error beta_alpha(P^n, Q^n) of the randomized
// Neyman-Pearson test with type-I acceptance probability exactly alpha.
// The rejection tail 1 - alpha and the returned beta both live in the log
// domain, so alpha arbitrarily close to 1 is handled exactly.
inline LogProb np_beta_exact(const LlrSpectrum& spec, double log_one_minus_alpha) {
    if (!(log_one_minus_alpha < 0.0))
        throw precondition_error("np_beta_exact: alpha must lie in (0,1)");
    const std::size_t m = spec.size();
    std::vector<double> pre_p = detail::prefix_excl(spec.log_probs_p);
    std::vector<double> suf_q = detail::suffix_excl(spec.log_probs_q);
    const double log_eps = log_one_minus_alpha;

    // gamma-low = largest support point with P(Z < gamma) <= eps
    std::size_t i = 0;
    for (std::size_t j = m; j-- > 0;) {
        if (pre_p[j] <= log_eps) { i = j; break; }
    }
    // randomization: reject below gamma always, at gamma with prob (1-lambda)
    double log_point_p = spec.log_probs_p[i];
    double log_one_minus_lambda =
        pre_p[i] >= log_eps ? neg_inf : log_sub(log_eps, pre_p[i]) - log_point_p;
    double log_beta;
    double log_above = (i + 1 <= m) ? suf_q[i + 1] : neg_inf; // Q(Z > gamma)
    if (log_one_minus_lambda >= -1e-12) {
        // lambda ~ 0: compute it the stable way from the other side
        double log_lambda = pre_p[i + 1] <= log_eps
                                ? neg_inf
                                : log_sub(pre_p[i + 1], log_eps) - log_point_p;
        log_beta = log_add(log_above, log_lambda + spec.log_probs_q[i]);
    } else {
        double log_lambda = log1mexp(log_one_minus_lambda);
        log_beta = log_add(log_above, log_lambda + spec.log_probs_q[i]);
    }
    return LogProb(log_beta);
}

inline LogProb np_beta_exact(const DiscreteDist& p, const DiscreteDist& q, std::size_t n,
                             double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw precondition_error("np_beta_exact: alpha must lie in (0,1)");
    LlrSpectrum spec = build_llr_spectrum(p, q, n);
    return np_beta_exact(spec, std::log1p(-alpha));
}

// np_beta_exact for alpha = 1 - eps given directly as eps (small eps safe).
inline LogProb np_beta_exact_eps(const DiscreteDist& p, const DiscreteDist& q, std::size_t n,
                                 double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw precondition_error("np_beta_exact: eps outside (0,1)");
    LlrSpectrum spec = build_llr_spectrum(p, q, n);
    return np_beta_exact(spec, std::log(eps));
}

struct DivergenceSpectrumValue {
    double value = 0.0;
    bool open_boundary = false; // eps sits on a cdf jump, or no point qualifies
};

// D_s^eps = sup { gamma : P[ sum log(P/Q) <= gamma ] <= eps }, realized as the
// largest support point whose inclusive cdf stays <= eps.
inline DivergenceSpectrumValue divergence_spectrum(const LlrSpectrum& spec, double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw precondition_error("divergence_spectrum: eps outside (0,1)");
    std::vector<double> pre_p = detail::prefix_excl(spec.log_probs_p);
    const double log_eps = std::log(eps);
    const std::size_t m = spec.size();
    DivergenceSpectrumValue out;
    bool found = false;
    for (std::size_t j = m; j-- > 0;) {
        if (pre_p[j + 1] <= log_eps) { // inclusive cdf at support[j]
            out.value = spec.support[j];
            out.open_boundary = std::abs(pre_p[j + 1] - log_eps) < 1e-12;
            found = true;
            break;
        }
    }
    if (!found) {
        out.value = spec.support.front();
        out.open_boundary = true;
    }
    return out;
}

inline DivergenceSpectrumValue divergence_spectrum(const DiscreteDist& p, const DiscreteDist& q,
                                                   std::size_t n, double eps) {
    LlrSpectrum spec = build_llr_spectrum(p, q, n);
    return divergence_spectrum(spec, eps);
}

} // namespace fba

#endif
