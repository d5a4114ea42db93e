#ifndef FBA_MOMENTS_HPP
#define FBA_MOMENTS_HPP

#include <cmath>
#include <vector>

#include "fba/channel.hpp"
#include "fba/errors.hpp"

namespace fba {

// Relative entropy D(p||q) in nats. 0 log(0/q) = 0; p log(p/0) is an
// absolute-continuity violation.
inline double kl_divergence(const std::vector<double>& p, const std::vector<double>& q) {
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) throw precondition_error("kl_divergence: P not absolutely continuous w.r.t. Q");
        d += p[i] * std::log(p[i] / q[i]);
    }
    return d;
}

// Central moments (through order 4) of log(p/q) under p.
struct LlrMoments {
    double mean = 0.0; // D(p||q)
    double var = 0.0;
    double mu3 = 0.0;
    double mu4 = 0.0;
};

inline LlrMoments llr_moments(const std::vector<double>& p, const std::vector<double>& q) {
    LlrMoments m;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) throw precondition_error("llr_moments: P not absolutely continuous w.r.t. Q");
        m.mean += p[i] * std::log(p[i] / q[i]);
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        double d = std::log(p[i] / q[i]) - m.mean;
        m.var += p[i] * d * d;
        m.mu3 += p[i] * d * d * d;
        m.mu4 += p[i] * d * d * d * d;
    }
    return m;
}

// Information-density moments of one (P_X, channel) pair. All exact finite
// sums over the joint alphabet; nothing here depends on capacity.
struct MomentSet {
    double mutual_info = 0.0;    // I (nats)
    double v_unconditional = 0.0; // Var of i(X;Y) (nats^2)
    double t_unconditional = 0.0; // third central moment of i(X;Y)
    double v_conditional = 0.0;   // E[Var(i | X)]
    double t_conditional = 0.0;   // E-average of per-input third central moments
    double v_reverse = 0.0;       // E[Var(i | Y)]
    double eta = 0.0;            // 1 - V_r / V_u; NaN when V_u = 0
    double mu3 = 0.0;            // = t_unconditional
    double mu4 = 0.0;            // fourth central moment of i(X;Y)

    bool degenerate() const { return !(v_unconditional > 0.0); }

    double sk_unconditional() const {
        if (degenerate())
            throw precondition_error("MomentSet: Sk_u undefined, V_u = 0");
        return t_unconditional / std::pow(v_unconditional, 1.5);
    }

    double sk_conditional() const {
        if (!(v_conditional > 0.0))
            throw precondition_error("MomentSet: Sk undefined, V = 0");
        return t_conditional / std::pow(v_conditional, 1.5);
    }
};

inline MomentSet moments(const Channel& ch, const InputDistribution& px) {
    px.validate();
    if (px.size() != ch.input_size())
        throw precondition_error("moments: input distribution size mismatch");
    const std::size_t nx = ch.input_size(), ny = ch.output_size();
    std::vector<double> py = ch.output_distribution(px);

    MomentSet m;
    // mean first, then central moments in a second pass
    for (std::size_t x = 0; x < nx; ++x) {
        if (px[x] == 0.0) continue;
        for (std::size_t y = 0; y < ny; ++y) {
            double pj = px[x] * ch(x, y);
            if (pj == 0.0) continue;
            m.mutual_info += pj * std::log(ch(x, y) / py[y]);
        }
    }
    for (std::size_t x = 0; x < nx; ++x) {
        if (px[x] == 0.0) continue;
        double dx = 0.0; // conditional mean of i given X = x
        for (std::size_t y = 0; y < ny; ++y) {
            if (ch(x, y) == 0.0) continue;
            dx += ch(x, y) * std::log(ch(x, y) / py[y]);
        }
        double vx = 0.0, tx = 0.0;
        for (std::size_t y = 0; y < ny; ++y) {
            if (ch(x, y) == 0.0) continue;
            double info = std::log(ch(x, y) / py[y]);
            double du = info - m.mutual_info;
            double pj = px[x] * ch(x, y);
            m.v_unconditional += pj * du * du;
            m.t_unconditional += pj * du * du * du;
            m.mu4 += pj * du * du * du * du;
            double dc = info - dx;
            vx += ch(x, y) * dc * dc;
            tx += ch(x, y) * dc * dc * dc;
        }
        m.v_conditional += px[x] * vx;
        m.t_conditional += px[x] * tx;
    }
    // reverse dispersion: average over y of Var(i(X;Y) | Y = y)
    for (std::size_t y = 0; y < ny; ++y) {
        if (py[y] == 0.0) continue;
        double mean_y = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
            double pxy = px[x] * ch(x, y);
            if (pxy == 0.0) continue;
            mean_y += (pxy / py[y]) * std::log(ch(x, y) / py[y]);
        }
        double var_y = 0.0;
        for (std::size_t x = 0; x < nx; ++x) {
            double pxy = px[x] * ch(x, y);
            if (pxy == 0.0) continue;
            double d = std::log(ch(x, y) / py[y]) - mean_y;
            var_y += (pxy / py[y]) * d * d;
        }
        m.v_reverse += py[y] * var_y;
    }
    m.mu3 = m.t_unconditional;
    m.eta = m.degenerate() ? std::nan("") : 1.0 - m.v_reverse / m.v_unconditional;
    return m;
}

} // namespace fba

#endif
