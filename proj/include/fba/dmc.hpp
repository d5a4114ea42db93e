#ifndef FBA_DMC_HPP
#define FBA_DMC_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "fba/channel.hpp"
#include "fba/errors.hpp"
#include "fba/moments.hpp"

namespace fba {

// Capacity-level description of a channel: capacity, capacity-achieving
// output distribution, the support set of capacity achievers, one achiever,
// and the dispersion extremes over the known achiever set.
struct ChannelStats {
    double capacity = 0.0;                // nats
    std::vector<double> caod;             // Q*_Y
    std::vector<std::size_t> x_dagger;    // inputs with D(P_{Y|X=x} || Q*) = C
    InputDistribution caid;               // one capacity-achieving input
    bool symmetric = false;               // Cover-Thomas symmetric
    bool caid_unique = false;
    double v_min = 0.0;
    double v_max = 0.0;
    std::vector<InputDistribution> dispersion_achievers;

    double v_eps(double eps) const { return eps < 0.5 ? v_min : v_max; }
};

namespace detail {

inline std::vector<double> divergences_to(const Channel& ch, const std::vector<double>& q) {
    std::vector<double> d(ch.input_size());
    for (std::size_t x = 0; x < ch.input_size(); ++x) {
        std::vector<double> row(ch.output_size());
        for (std::size_t y = 0; y < ch.output_size(); ++y) row[y] = ch(x, y);
        d[x] = kl_divergence(row, q);
    }
    return d;
}

// Uniqueness test for the capacity-achieving input: the negated mutual
// information Hessian restricted to the simplex-tangent directions supported
// on X-dagger must be positive definite.
inline bool caid_unique_on_support(const Channel& ch, const std::vector<double>& py,
                                   const std::vector<std::size_t>& xdag) {
    const std::size_t k = xdag.size();
    if (k <= 1) return true;
    Eigen::MatrixXd j(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            double s = 0.0;
            for (std::size_t y = 0; y < ch.output_size(); ++y) {
                if (py[y] == 0.0) continue;
                s += ch(xdag[i], y) * ch(xdag[l], y) / py[y];
            }
            j(i, l) = s;
        }
    // project out the all-ones direction, check the rest of the spectrum
    Eigen::MatrixXd ones = Eigen::MatrixXd::Constant(k, k, 1.0 / double(k));
    Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(k, k) - ones;
    Eigen::MatrixXd jt = proj * j * proj;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jt);
    // k-1 eigenvalues matter; the projected-out direction contributes a zero
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + k);
    std::sort(ev.begin(), ev.end());
    double scale = std::max(1.0, ev.back());
    return ev[1] > 1e-9 * scale;
}

} // namespace detail

// Alternating-maximization capacity solver with a KL-based stopping rule:
// stop once max_x D(P_{Y|X=x} || Q) - I(P_X) < tol, which sandwiches the
// capacity between the two sides. For Cover-Thomas symmetric channels the
// uniform input is returned exactly.
inline ChannelStats capacity_solve(const Channel& ch, double tol = 1e-11,
                                   int max_iterations = 200000) {
    if (!(tol > 0.0)) throw precondition_error("capacity_solve: tol must be positive");
    ChannelStats st;
    st.symmetric = ch.is_cover_thomas_symmetric();
    const std::size_t nx = ch.input_size(), ny = ch.output_size();

    InputDistribution px = InputDistribution::uniform(nx);
    if (st.symmetric) {
        st.caid = px;
        st.caod = ch.output_distribution(px);
        std::vector<double> d = detail::divergences_to(ch, st.caod);
        double avg = 0.0;
        for (std::size_t x = 0; x < nx; ++x) avg += px[x] * d[x];
        st.capacity = avg;
    } else {
        double upper = 0.0, lower = 0.0;
        bool converged = false;
        for (int it = 0; it < max_iterations; ++it) {
            std::vector<double> py = ch.output_distribution(px);
            std::vector<double> d = detail::divergences_to(ch, py);
            upper = *std::max_element(d.begin(), d.end());
            lower = 0.0;
            for (std::size_t x = 0; x < nx; ++x) lower += px[x] * d[x];
            if (upper - lower < tol) {
                st.caod = std::move(py);
                converged = true;
                break;
            }
            double norm = 0.0;
            for (std::size_t x = 0; x < nx; ++x) {
                px.weights[x] *= std::exp(d[x] - upper); // shift for stability
                norm += px.weights[x];
            }
            for (std::size_t x = 0; x < nx; ++x) px.weights[x] /= norm;
        }
        if (!converged)
            throw numerical_error("capacity_solve: no convergence after max iterations");
        st.caid = px;
        st.capacity = lower;
    }

    std::vector<double> d = detail::divergences_to(ch, st.caod);
    for (std::size_t x = 0; x < nx; ++x)
        if (d[x] >= st.capacity - 10.0 * tol) st.x_dagger.push_back(x);
    st.caid_unique = st.symmetric ||
                     detail::caid_unique_on_support(ch, st.caod, st.x_dagger);
    return st;
}

// V_min / V_max over the dispersion-achieving set. Beyond the symmetric and
// unique-caid cases the achiever set must be supplied by the caller.
inline void dispersion(const Channel& ch, ChannelStats& st,
                       const std::vector<InputDistribution>& explicit_achievers = {}) {
    std::vector<InputDistribution> achievers = explicit_achievers;
    if (achievers.empty()) {
        if (!st.symmetric && !st.caid_unique)
            throw precondition_error(
                "dispersion: capacity-achieving input may be non-unique; "
                "supply the achiever list explicitly");
        achievers.push_back(st.caid);
    }
    double vmin = std::numeric_limits<double>::infinity(), vmax = 0.0;
    for (const InputDistribution& a : achievers) {
        double v = moments(ch, a).v_conditional;
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    st.v_min = vmin;
    st.v_max = vmax;
    st.dispersion_achievers = std::move(achievers);
}

struct SingularityReport {
    bool is_singular = false;
    bool degenerate = false; // V_u = 0 on some achiever, eta undefined
    std::vector<double> eta_per_achiever;
};

// A channel is singular iff eta = 1 on every dispersion-achieving input.
inline SingularityReport classify_singularity(const Channel& ch, const ChannelStats& st) {
    if (st.dispersion_achievers.empty())
        throw precondition_error("classify_singularity: run dispersion() first");
    SingularityReport rep;
    rep.is_singular = true;
    for (const InputDistribution& a : st.dispersion_achievers) {
        MomentSet m = moments(ch, a);
        if (m.degenerate()) {
            rep.degenerate = true;
            rep.eta_per_achiever.push_back(std::nan(""));
            rep.is_singular = false;
            continue;
        }
        rep.eta_per_achiever.push_back(m.eta);
        if (std::abs(m.eta - 1.0) > 1e-9) rep.is_singular = false;
    }
    return rep;
}

// Convenience: capacity + dispersion in one call.
inline ChannelStats analyze_channel(const Channel& ch, double tol = 1e-11) {
    ChannelStats st = capacity_solve(ch, tol);
    dispersion(ch, st);
    return st;
}

} // namespace fba

#endif
