#ifndef FBA_GEOMETRY_HPP
#define FBA_GEOMETRY_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <vector>

#include "fba/channel.hpp"
#include "fba/dmc.hpp"
#include "fba/errors.hpp"
#include "fba/gaussian_tail.hpp"
#include "fba/moments.hpp"

namespace fba {

// Second-order geometry of the mutual information around an input
// distribution: gradient/Hessian of I, the J and J-tilde matrices on the
// capacity-achieving support, the dispersion gradient v, the per-input
// divergence variances v-tilde, the mixed derivative v-bar, and the two
// quadratic forms A0, A1.
struct GeometryBundle {
    Eigen::VectorXd grad_i;   // D(P_{Y|X=x} || P_Y) - 1
    Eigen::MatrixXd hess_i;   // -sum_y P(y|x)P(y|x')/P_Y(y)
    Eigen::MatrixXd j;        // -hess_i zero-padded outside X-dagger
    Eigen::MatrixXd j_pinv;   // Moore-Penrose pseudo-inverse of j
    Eigen::MatrixXd j_tilde;  // J^+ - (J^+ 1)(J^+ 1)^T / (1^T J^+ 1)
    Eigen::VectorXd v;        // gradient of the conditional information variance
    Eigen::VectorXd v_tilde;  // V(P_{Y|X=x} || Q*_Y)
    Eigen::VectorXd v_bar;    // sum_x' P_X(x') dV(P_{Y|X=x'} || P_Y)/dP_X(x)
    double a0 = 0.0;
    double a1 = 0.0;
    double v_eps = 0.0;       // dispersion used in the quadratic forms
};

namespace detail {

// Pseudo-inverse of a symmetric PSD matrix by eigendecomposition with a
// relative eigenvalue cutoff.
inline Eigen::MatrixXd psd_pseudo_inverse(const Eigen::MatrixXd& m, double rel_cutoff = 1e-10) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw numerical_error("psd_pseudo_inverse: eigendecomposition failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    double cutoff = rel_cutoff * std::max(0.0, ev.maxCoeff());
    Eigen::VectorXd inv = ev;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        inv(i) = ev(i) > cutoff ? 1.0 / ev(i) : 0.0;
    return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

} // namespace detail

inline GeometryBundle geometry(const Channel& ch, const ChannelStats& st,
                               const InputDistribution& px) {
    const std::size_t nx = ch.input_size(), ny = ch.output_size();
    if (px.size() != nx) throw precondition_error("geometry: input distribution size mismatch");
    std::vector<double> py = ch.output_distribution(px);
    for (std::size_t y = 0; y < ny; ++y) {
        if (py[y] > 0.0) continue;
        for (std::size_t x = 0; x < nx; ++x)
            if (ch(x, y) > 0.0)
                throw precondition_error("geometry: P_Y(y) = 0 on an output reachable from some input");
    }

    GeometryBundle g;
    g.grad_i.resize(nx);
    g.hess_i.resize(nx, nx);
    g.v_tilde.resize(nx);
    g.v_bar.resize(nx);
    g.v.resize(nx);

    // per-input divergences and variances against the current output marginal
    std::vector<double> d_x(nx, 0.0), var_x(nx, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t y = 0; y < ny; ++y) {
            if (ch(x, y) == 0.0) continue;
            d_x[x] += ch(x, y) * std::log(ch(x, y) / py[y]);
        }
        for (std::size_t y = 0; y < ny; ++y) {
            if (ch(x, y) == 0.0) continue;
            double dev = std::log(ch(x, y) / py[y]) - d_x[x];
            var_x[x] += ch(x, y) * dev * dev;
        }
        g.grad_i(x) = d_x[x] - 1.0;
        g.v_tilde(x) = var_x[x];
    }

    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t xp = 0; xp < nx; ++xp) {
            double s = 0.0;
            for (std::size_t y = 0; y < ny; ++y) {
                double num = ch(x, y) * ch(xp, y);
                if (num == 0.0) continue;
                s += num / py[y];
            }
            g.hess_i(x, xp) = -s;
        }

    // v_bar(x) = sum_x' P(x') dV(P_{Y|X=x'} || P_Y)/dP_X(x)
    //          = -2 sum_x' P(x') sum_y P(y|x')P(y|x)/P_Y(y) (log(P(y|x')/P_Y(y)) - D_x')
    for (std::size_t x = 0; x < nx; ++x) {
        double acc = 0.0;
        for (std::size_t xp = 0; xp < nx; ++xp) {
            if (px[xp] == 0.0) continue;
            double inner = 0.0;
            for (std::size_t y = 0; y < ny; ++y) {
                double num = ch(xp, y) * ch(x, y);
                if (num == 0.0) continue;
                inner += (num / py[y]) * (std::log(ch(xp, y) / py[y]) - d_x[xp]);
            }
            acc += px[xp] * inner;
        }
        g.v_bar(x) = -2.0 * acc;
    }
    // product rule: d/dP_X(x) of sum_x' P(x') V_x' picks up V_x itself
    g.v = g.v_tilde + g.v_bar;

    // J: zero-padded restriction of -hess_i to the capacity-achieving support
    g.j = Eigen::MatrixXd::Zero(nx, nx);
    for (std::size_t xi : st.x_dagger)
        for (std::size_t xj : st.x_dagger) g.j(xi, xj) = -g.hess_i(xi, xj);

    g.j_pinv = detail::psd_pseudo_inverse(g.j);
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(nx);
    Eigen::VectorXd jp1 = g.j_pinv * ones;
    double denom = ones.dot(jp1);
    if (!(denom > 0.0))
        throw numerical_error("geometry: 1^T J^+ 1 is not positive");
    g.j_tilde = g.j_pinv - (jp1 * jp1.transpose()) / denom;

    g.v_eps = st.v_min;
    g.a0 = g.v.dot(g.j_tilde * g.v) / (8.0 * g.v_eps);
    g.a1 = g.v_bar.dot(g.j_tilde * g.v_bar) / (8.0 * g.v_eps);
    return g;
}

// A0 and A1 for an arbitrary dispersion value.
inline std::pair<double, double> a_terms(const GeometryBundle& g, double v_eps) {
    if (!(v_eps > 0.0)) throw precondition_error("a_terms: v_eps must be positive");
    double a0 = g.v.dot(g.j_tilde * g.v) / (8.0 * v_eps);
    double a1 = g.v_bar.dot(g.j_tilde * g.v_bar) / (8.0 * v_eps);
    return {a0, a1};
}

struct SkewnessBounds {
    double s_lower = 0.0; // coefficient of Q^{-1}(eps)^2 in the achievability bound
    double s_upper = 0.0; // same for the converse
    InputDistribution achiever_lower; // input attaining the max in s_lower
};

// Channel skewness bounds over the dispersion-achieving set. Preconditions:
// nonsingular channel, V_min > 0, and all achievers supported on the whole
// capacity-achieving support set (the X-dagger = X-star case).
inline SkewnessBounds skewness_bounds(const Channel& ch, const ChannelStats& st) {
    if (st.dispersion_achievers.empty())
        throw precondition_error("skewness_bounds: run dispersion() first");
    if (!(st.v_min > 0.0))
        throw precondition_error("skewness_bounds: V_min = 0 (zero-dispersion channel)");
    SingularityReport sing = classify_singularity(ch, st);
    if (sing.is_singular)
        throw precondition_error("skewness_bounds: channel is singular (eta = 1)");
    for (const InputDistribution& a : st.dispersion_achievers)
        for (std::size_t x : st.x_dagger)
            if (!(a[x] > 0.0))
                throw precondition_error(
                    "skewness_bounds: achiever not supported on all of X-dagger "
                    "(X-star = X-dagger condition violated)");

    SkewnessBounds out;
    bool first = true;
    for (const InputDistribution& a : st.dispersion_achievers) {
        MomentSet m = moments(ch, a);
        GeometryBundle g = geometry(ch, st, a);
        double base = m.sk_unconditional() * std::sqrt(st.v_min) / 6.0;
        double lower = base + g.a0 + (1.0 - m.eta) / (2.0 * (1.0 + m.eta));
        double upper = base + 0.5 + g.a0 - g.a1;
        if (first || lower > out.s_lower) {
            out.s_lower = lower;
            out.achiever_lower = a;
        }
        if (first || upper > out.s_upper) out.s_upper = upper;
        first = false;
    }
    return out;
}

// Input distribution achieving the skewness lower bound at finite (n, eps):
// P* - Q^{-1}(eps) / (2 sqrt(n V_eps)) * J-tilde v(P*). Verifies the KKT
// system of the underlying quadratic program before returning.
inline InputDistribution optimal_input_tilt(const Channel& ch, const ChannelStats& st,
                                            std::size_t n, double eps) {
    if (st.dispersion_achievers.empty())
        throw precondition_error("optimal_input_tilt: run dispersion() first");
    if (!(st.v_min > 0.0))
        throw precondition_error("optimal_input_tilt: V_min = 0");
    const InputDistribution& pstar = st.dispersion_achievers.front();
    GeometryBundle g = geometry(ch, st, pstar);
    double v_eps = st.v_eps(eps);
    double scale = -q_inverse(eps) / (2.0 * std::sqrt(double(n) * v_eps));

    Eigen::VectorXd h = scale * g.v;
    Eigen::VectorXd gstar = g.j_tilde * h;

    // KKT check on the X-dagger block: J g* = h_proj - lambda* 1, 1^T g* = 0,
    // with lambda* = 1^T J^+ h / (1^T J^+ 1).
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(ch.input_size());
    Eigen::VectorXd h_proj = g.j * (g.j_pinv * h); // projection onto row(J)
    double lambda_star = ones.dot(g.j_pinv * h) / ones.dot(g.j_pinv * ones);
    Eigen::VectorXd residual = g.j * gstar - (h_proj - lambda_star * ones);
    double rscale = std::max(1.0, h.lpNorm<Eigen::Infinity>());
    for (std::size_t x : st.x_dagger)
        if (std::abs(residual(x)) > 1e-8 * rscale)
            throw numerical_error("optimal_input_tilt: KKT residual check failed");
    if (std::abs(gstar.sum()) > 1e-10)
        throw numerical_error("optimal_input_tilt: tilt does not preserve total probability");

    InputDistribution out = pstar;
    for (std::size_t x = 0; x < ch.input_size(); ++x) {
        out.weights[x] += gstar(x);
        if (out.weights[x] < 0.0 || out.weights[x] > 1.0)
            throw precondition_error(
                "optimal_input_tilt: tilted weight outside [0,1] at n=" + std::to_string(n) +
                ", eps=" + std::to_string(eps) + " (expansion regime violated)");
    }
    return out;
}

} // namespace fba

#endif
