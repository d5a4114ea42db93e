#ifndef FBA_LOG_ARITH_HPP
#define FBA_LOG_ARITH_HPP

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace fba {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// A probability stored as its natural logarithm; -inf encodes exact zero.
// All information measures in this library are in nats.
struct LogProb {
    double log_value = neg_inf;

    constexpr LogProb() = default;
    constexpr explicit LogProb(double lv) : log_value(lv) {}

    static constexpr LogProb zero() { return LogProb(neg_inf); }
    static constexpr LogProb one() { return LogProb(0.0); }
    static LogProb from_prob(double p) { return LogProb(std::log(p)); }

    double prob() const { return std::exp(log_value); }
    bool is_zero() const { return log_value == neg_inf; }

    friend constexpr auto operator<=>(const LogProb&, const LogProb&) = default;
};

// log(e^a + e^b) with max-shift; handles -inf operands.
inline double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == neg_inf) return a;
    return a + std::log1p(std::exp(b - a));
}

// log(e^a - e^b), requires a >= b.
inline double log_sub(double a, double b) {
    if (b == neg_inf) return a;
    if (b >= a) return neg_inf;
    return a + std::log1p(-std::exp(b - a));
}

// log(1 - e^x) for x <= 0, stable near both ends.
inline double log1mexp(double x) {
    if (x == neg_inf) return 0.0;
    if (x > -std::log(2.0)) return std::log(-std::expm1(x));
    return std::log1p(-std::exp(x));
}

inline double log_sum_exp(std::span<const double> terms) {
    double m = neg_inf;
    for (double t : terms) m = std::max(m, t);
    if (m == neg_inf) return neg_inf;
    double s = 0.0;
    for (double t : terms) s += std::exp(t - m);
    return m + std::log(s);
}

inline double log_sum_exp(const std::vector<double>& terms) {
    return log_sum_exp(std::span<const double>(terms));
}

inline LogProb log_sum_exp(std::span<const LogProb> terms) {
    double m = neg_inf;
    for (const LogProb& t : terms) m = std::max(m, t.log_value);
    if (m == neg_inf) return LogProb::zero();
    double s = 0.0;
    for (const LogProb& t : terms) s += std::exp(t.log_value - m);
    return LogProb(m + std::log(s));
}

inline LogProb log_sum_exp(const std::vector<LogProb>& terms) {
    return log_sum_exp(std::span<const LogProb>(terms));
}

// Streaming accumulator for sums of many log-domain terms.
class LogAccumulator {
public:
    void add(double log_term) { total_ = log_add(total_, log_term); }
    double log_total() const { return total_; }

private:
    double total_ = neg_inf;
};

} // namespace fba

#endif
