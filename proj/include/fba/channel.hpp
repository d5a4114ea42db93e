#ifndef FBA_CHANNEL_HPP
#define FBA_CHANNEL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "fba/errors.hpp"

namespace fba {

inline constexpr double row_sum_tol = 1e-12;

// Probability vector over channel inputs.
struct InputDistribution {
    std::vector<double> weights;

    std::size_t size() const { return weights.size(); }
    double operator[](std::size_t x) const { return weights[x]; }

    static InputDistribution uniform(std::size_t k) {
        return InputDistribution{std::vector<double>(k, 1.0 / double(k))};
    }

    void validate() const {
        double sum = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw precondition_error("InputDistribution: negative weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > row_sum_tol)
            throw precondition_error("InputDistribution: weights do not sum to 1");
    }
};

// Finite-alphabet DMC: transition probabilities P(y|x), rows indexed by x.
class Channel {
public:
    Channel(std::size_t input_size, std::size_t output_size, std::vector<double> transition)
        : nx_(input_size), ny_(output_size), p_(std::move(transition)) {
        if (p_.size() != nx_ * ny_) throw precondition_error("Channel: transition size mismatch");
        validate();
    }

    std::size_t input_size() const { return nx_; }
    std::size_t output_size() const { return ny_; }
    double operator()(std::size_t x, std::size_t y) const { return p_[x * ny_ + y]; }

    std::vector<double> output_distribution(const InputDistribution& px) const {
        std::vector<double> py(ny_, 0.0);
        for (std::size_t x = 0; x < nx_; ++x)
            for (std::size_t y = 0; y < ny_; ++y) py[y] += px[x] * (*this)(x, y);
        return py;
    }

    // Cover-Thomas symmetry: all rows are permutations of one another, and so
    // are all columns. Uniform input is then capacity- and dispersion-achieving.
    bool is_cover_thomas_symmetric(double tol = 1e-12) const {
        auto sorted_row = [&](std::size_t x) {
            std::vector<double> r(ny_);
            for (std::size_t y = 0; y < ny_; ++y) r[y] = (*this)(x, y);
            std::sort(r.begin(), r.end());
            return r;
        };
        auto sorted_col = [&](std::size_t y) {
            std::vector<double> c(nx_);
            for (std::size_t x = 0; x < nx_; ++x) c[x] = (*this)(x, y);
            std::sort(c.begin(), c.end());
            return c;
        };
        auto same_multiset = [&](const std::vector<double>& a, const std::vector<double>& b) {
            for (std::size_t i = 0; i < a.size(); ++i)
                if (std::abs(a[i] - b[i]) > tol) return false;
            return true;
        };
        std::vector<double> r0 = sorted_row(0);
        for (std::size_t x = 1; x < nx_; ++x)
            if (!same_multiset(r0, sorted_row(x))) return false;
        std::vector<double> c0 = sorted_col(0);
        for (std::size_t y = 1; y < ny_; ++y)
            if (!same_multiset(c0, sorted_col(y))) return false;
        return true;
    }

    static Channel bsc(double crossover) {
        if (crossover < 0.0 || crossover > 1.0) throw precondition_error("bsc: crossover outside [0,1]");
        return Channel(2, 2, {1.0 - crossover, crossover, crossover, 1.0 - crossover});
    }

    static Channel binary_erasure(double erasure) {
        if (erasure < 0.0 || erasure > 1.0) throw precondition_error("bec: erasure outside [0,1]");
        return Channel(2, 3, {1.0 - erasure, erasure, 0.0, 0.0, erasure, 1.0 - erasure});
    }

    // Text format: first line "|X| |Y|", then |X| rows of |Y| probabilities.
    // Lines starting with '#' are comments.
    static Channel parse(std::istream& in) {
        auto next_data_line = [&](std::string& line) -> bool {
            while (std::getline(in, line)) {
                std::size_t pos = line.find_first_not_of(" \t\r");
                if (pos == std::string::npos) continue;
                if (line[pos] == '#') continue;
                return true;
            }
            return false;
        };
        std::string line;
        if (!next_data_line(line)) throw parse_error("channel file: missing header line");
        std::istringstream head(line);
        long long nx = 0, ny = 0;
        if (!(head >> nx >> ny) || nx <= 0 || ny <= 0)
            throw parse_error("channel file: header must be '|X| |Y|' with positive counts");
        std::vector<double> p;
        p.reserve(std::size_t(nx) * std::size_t(ny));
        for (long long x = 0; x < nx; ++x) {
            if (!next_data_line(line))
                throw parse_error("channel file: expected " + std::to_string(nx) + " rows");
            std::istringstream row(line);
            for (long long y = 0; y < ny; ++y) {
                double v;
                if (!(row >> v)) throw parse_error("channel file: row " + std::to_string(x) +
                                                   " needs " + std::to_string(ny) + " entries");
                p.push_back(v);
            }
            double extra;
            if (row >> extra) throw parse_error("channel file: row " + std::to_string(x) + " has extra entries");
        }
        try {
            return Channel(std::size_t(nx), std::size_t(ny), std::move(p));
        } catch (const precondition_error& e) {
            throw parse_error(std::string("channel file: ") + e.what());
        }
    }

    static Channel load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw parse_error("cannot open channel file: " + path);
        return parse(in);
    }

private:
    void validate() const {
        for (std::size_t x = 0; x < nx_; ++x) {
            double sum = 0.0;
            for (std::size_t y = 0; y < ny_; ++y) {
                double v = (*this)(x, y);
                if (v < 0.0) throw precondition_error("Channel: negative transition probability");
                sum += v;
            }
            if (std::abs(sum - 1.0) > row_sum_tol)
                throw precondition_error("Channel: row " + std::to_string(x) + " does not sum to 1");
        }
    }

    std::size_t nx_, ny_;
    std::vector<double> p_;
};

} // namespace fba

#endif
