#ifndef FBA_LARGE_DEVIATIONS_HPP
#define FBA_LARGE_DEVIATIONS_HPP

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <optional>

#include "fba/errors.hpp"
#include "fba/moments.hpp"
#include "fba/root_solve.hpp"

namespace fba {

// Value and first two derivatives of a scalar cgf at one point.
struct CgfPoint {
    double value;
    double d1;
    double d2;
};

using Cgf1d = std::function<CgfPoint(double)>;

// Solution of the tilt equation grad kappa(s) = a.
struct TiltSolution {
    Eigen::VectorXd s_star;
    double rate = 0.0;          // Lambda(a) = <s,a> - kappa(s)
    Eigen::MatrixXd hessian;    // grad^2 kappa(s*)
    std::optional<double> prefactor; // E_NL or E_L once computed
};

// Legendre transform of a convex scalar cgf: Newton-solve kappa'(s) = a on
// the bracket, then rate = s a - kappa(s).
inline TiltSolution rate_function_1d(const Cgf1d& cgf, double a, Bracket bracket,
                                     double tol = 1e-12) {
    auto f = [&](double s) {
        CgfPoint k = cgf(s);
        if (!(k.d2 > 0.0))
            throw numerical_error("rate_function_1d: cgf not convex on the bracket (kappa'' <= 0)");
        return std::pair<double, double>{k.d1 - a, k.d2};
    };
    NewtonOptions opt;
    opt.tol = tol;
    opt.bracket = bracket;
    double s = newton_solve(f, 0.5 * (bracket.lo + bracket.hi), opt);
    CgfPoint k = cgf(s);
    TiltSolution t;
    t.s_star = Eigen::VectorXd::Constant(1, s);
    t.rate = s * a - k.value;
    t.hessian = Eigen::MatrixXd::Constant(1, 1, k.d2);
    return t;
}

enum class LatticeKind { non_lattice, lattice };

// Exact subexponential prefactor of P(S_n >= n a) ~ (E / n^{d/2}) e^{-n Lambda}:
//   E_NL = [ (2 pi)^{d/2} (prod_j s_j) sqrt(det grad^2 kappa) ]^{-1}
//   E_L  = [ (2 pi)^{d/2} sqrt(det grad^2 kappa) ]^{-1} prod_j h_j / (1 - e^{-s_j h_j})
inline double strong_ld_prefactor(LatticeKind kind, const Eigen::VectorXd& s_star,
                                  const Eigen::MatrixXd& hessian,
                                  const Eigen::VectorXd& spans = Eigen::VectorXd()) {
    const Eigen::Index d = s_star.size();
    if (hessian.rows() != d || hessian.cols() != d)
        throw precondition_error("strong_ld_prefactor: hessian dimension mismatch");
    Eigen::LLT<Eigen::MatrixXd> llt(hessian);
    if (llt.info() != Eigen::Success)
        throw numerical_error("strong_ld_prefactor: hessian not positive definite");
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));
    double value = std::exp(-0.5 * double(d) * log_two_pi - 0.5 * logdet);
    if (kind == LatticeKind::non_lattice) {
        for (Eigen::Index j = 0; j < d; ++j) value /= s_star(j);
    } else {
        if (spans.size() != d)
            throw precondition_error("strong_ld_prefactor: lattice kind needs one span per dimension");
        for (Eigen::Index j = 0; j < d; ++j) {
            if (!(spans(j) > 0.0))
                throw precondition_error("strong_ld_prefactor: spans must be positive");
            value *= spans(j) / (-std::expm1(-s_star(j) * spans(j)));
        }
    }
    return value;
}

// Coefficients of the rate-function expansion around the mutual information:
// quadratic coefficient 1/((1+eta) V_u), and, for eta = 0, the third-derivative
// ingredient grad^3 Lambda(a)_{1,1,1} = -2 mu3 / V^3.
inline std::pair<double, double> lambda_expansion_coeffs(const MomentSet& m) {
    if (m.degenerate())
        throw precondition_error("lambda_expansion_coeffs: V_u = 0");
    double quad = 1.0 / ((1.0 + m.eta) * m.v_unconditional);
    if (std::abs(m.eta) > 1e-9)
        throw precondition_error("lambda_expansion_coeffs: cubic coefficient requires eta = 0");
    double v = m.v_unconditional;
    double cubic = -2.0 * m.mu3 / (v * v * v);
    return {quad, cubic};
}

// Quadratic coefficient alone; valid for any eta in [0,1).
inline double lambda_quadratic_coeff(const MomentSet& m) {
    if (m.degenerate())
        throw precondition_error("lambda_quadratic_coeff: V_u = 0");
    return 1.0 / ((1.0 + m.eta) * m.v_unconditional);
}

} // namespace fba

#endif
