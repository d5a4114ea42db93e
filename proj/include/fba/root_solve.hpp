#ifndef FBA_ROOT_SOLVE_HPP
#define FBA_ROOT_SOLVE_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <utility>

#include "fba/errors.hpp"

namespace fba {

struct Bracket {
    double lo;
    double hi;
};

struct NewtonOptions {
    double tol = 1e-12;          // |f(x*)| target
    int max_iterations = 100;
    std::optional<Bracket> bracket; // fallback region if Newton wanders
};

// Newton's method on f (value, derivative). If a bracket is supplied, the
// iterate is kept inside it and bisection takes over whenever the Newton step
// leaves the bracket or the derivative degenerates.
inline double newton_solve(const std::function<std::pair<double, double>(double)>& f,
                           double x0, NewtonOptions opt = {}) {
    double lo = 0.0, hi = 0.0;
    bool have_bracket = opt.bracket.has_value();
    double flo = 0.0;
    if (have_bracket) {
        lo = opt.bracket->lo;
        hi = opt.bracket->hi;
        flo = f(lo).first;
        double fhi = f(hi).first;
        if (std::abs(flo) < opt.tol) return lo;
        if (std::abs(fhi) < opt.tol) return hi;
        if (flo * fhi > 0.0)
            throw numerical_error("newton_solve: bracket does not enclose a sign change");
    }
    double x = x0;
    for (int it = 0; it < opt.max_iterations; ++it) {
        auto [fx, dfx] = f(x);
        if (std::abs(fx) < opt.tol) return x;
        if (have_bracket) {
            if ((fx > 0.0) == (flo > 0.0)) lo = x; else hi = x;
        }
        double step = fx / dfx;
        double xn = x - step;
        bool bad = !std::isfinite(xn) || dfx == 0.0;
        if (have_bracket && (bad || xn <= std::min(lo, hi) || xn >= std::max(lo, hi))) {
            xn = 0.5 * (lo + hi); // bisect
        } else if (bad) {
            throw numerical_error("newton_solve: derivative vanished with no bracket");
        }
        if (xn == x) return x;
        x = xn;
    }
    throw numerical_error("newton_solve: no convergence after max iterations");
}

// Plain bisection on a sign change; tolerance on the interval width.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     double xtol = 1e-12, int max_iterations = 200) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) throw numerical_error("bisect: no sign change on bracket");
    for (int it = 0; it < max_iterations && hi - lo > xtol; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) { lo = mid; flo = fm; } else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace fba

#endif
