#ifndef FBA_EXPANSION_HPP
#define FBA_EXPANSION_HPP

#include <cmath>
#include <cstddef>

#include "fba/channel.hpp"
#include "fba/dmc.hpp"
#include "fba/errors.hpp"
#include "fba/gaussian_tail.hpp"
#include "fba/geometry.hpp"
#include "fba/moments.hpp"

namespace fba {

enum class Side { lower, upper };

// An asymptotic approximation to log M with its per-term breakdown (nats).
// order records how many terms beyond the dispersion term were kept:
// 2 = CLT (capacity + dispersion + half-log), 3 = + skewness, 4 = + Q^{-3} term.
struct ExpansionResult {
    int order = 2;
    double capacity_term = 0.0;    // n C
    double dispersion_term = 0.0;  // -sqrt(n V) Q^{-1}(eps)
    double log_term = 0.0;         // (1/2) log n
    double skewness_term = 0.0;    // S Q^{-1}(eps)^2
    double fourth_term = 0.0;      // -coef * Q^{-1}(eps)^3 / sqrt(n)
    double constant_term = 0.0;    // 0 unless the theorem supplies a constant
    double total_log_m = 0.0;      // sum of the terms above

    void finalize() {
        total_log_m = capacity_term + dispersion_term + log_term + skewness_term +
                      fourth_term + constant_term;
    }
};

// coefficient of Q^{-1}(eps)^3/sqrt(n) in the fourth-order refinement:
// (3 (mu4 - 3 V^2) V - 4 mu3^2) / (72 V^{5/2})
inline double fourth_order_coeff(double v, double mu3, double mu4) {
    if (!(v > 0.0)) throw precondition_error("fourth_order_coeff: V must be positive");
    return (3.0 * (mu4 - 3.0 * v * v) * v - 4.0 * mu3 * mu3) / (72.0 * std::pow(v, 2.5));
}

// Everything rate_expansion needs about a channel, computed once per channel.
struct RateModel {
    double capacity = 0.0;
    double v_min = 0.0;
    double v_max = 0.0;
    double s_lower = 0.0;
    double s_upper = 0.0;
    bool ct_symmetric = false;
    // uniform-input information-density moments; only used at order 4
    double v_sym = 0.0;
    double mu3_sym = 0.0;
    double mu4_sym = 0.0;

    double v_eps(double eps) const { return eps < 0.5 ? v_min : v_max; }
};

inline RateModel make_rate_model(const Channel& ch, const ChannelStats& st) {
    RateModel m;
    m.capacity = st.capacity;
    m.v_min = st.v_min;
    m.v_max = st.v_max;
    m.ct_symmetric = st.symmetric;
    SkewnessBounds b = skewness_bounds(ch, st);
    m.s_lower = b.s_lower;
    m.s_upper = b.s_upper;
    if (st.symmetric) {
        MomentSet mom = moments(ch, InputDistribution::uniform(ch.input_size()));
        m.v_sym = mom.v_unconditional;
        m.mu3_sym = mom.mu3;
        m.mu4_sym = mom.mu4;
    }
    return m;
}

// log M expansion for a DMC at blocklength n and error probability eps.
// order 2 keeps nC - sqrt(nV) Q^{-1} + (1/2) log n; order 3 adds the skewness
// term with S-lower or S-upper by side; order 4 adds the Q^{-1}(eps)^3/sqrt(n)
// refinement, available for Cover-Thomas symmetric channels only.
inline ExpansionResult rate_expansion(const RateModel& m, std::size_t n, double eps,
                                      int order, Side side) {
    if (!(eps > 0.0 && eps < 1.0)) throw precondition_error("rate_expansion: eps outside (0,1)");
    if (order < 2 || order > 4) throw precondition_error("rate_expansion: order must be 2, 3, or 4");
    double v = m.v_eps(eps);
    if (!(v > 0.0)) throw precondition_error("rate_expansion: zero eps-dispersion");
    double qi = q_inverse(eps);
    ExpansionResult r;
    r.order = order;
    r.capacity_term = double(n) * m.capacity;
    r.dispersion_term = -std::sqrt(double(n) * v) * qi;
    r.log_term = 0.5 * std::log(double(n));
    if (order >= 3)
        r.skewness_term = (side == Side::lower ? m.s_lower : m.s_upper) * qi * qi;
    if (order == 4) {
        if (!m.ct_symmetric)
            throw precondition_error(
                "rate_expansion: order-4 term is only available for Cover-Thomas symmetric channels");
        r.fourth_term =
            -fourth_order_coeff(m.v_sym, m.mu3_sym, m.mu4_sym) * qi * qi * qi / std::sqrt(double(n));
    }
    r.finalize();
    return r;
}

} // namespace fba

#endif
