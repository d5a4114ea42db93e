#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fba/gaussian_tail.hpp"
#include "fba/root_solve.hpp"

using namespace fba;

TEST_CASE("newton_solve basics") {
    auto linear = [](double x) { return std::pair{x - 1.0, 1.0}; };
    CHECK(newton_solve(linear, 0.0) == Catch::Approx(1.0).epsilon(1e-14));

    auto expf = [](double x) { return std::pair{std::exp(x) - 2.0, std::exp(x)}; };
    CHECK(newton_solve(expf, 0.0) == Catch::Approx(std::log(2.0)).epsilon(1e-13));
}

TEST_CASE("newton_solve with bracket fallback") {
    // Q(x) = 0.025 on [0,5]; the derivative comes from the density
    auto f = [](double x) {
        return std::pair{q_tail(x) - 0.025, -std::exp(log_std_normal_pdf(x))};
    };
    NewtonOptions opt;
    opt.tol = 1e-14;
    opt.bracket = Bracket{0.0, 5.0};
    double x = newton_solve(f, 0.1, opt);
    CHECK(x == Catch::Approx(1.9599639845400542).epsilon(1e-10));

    // divergent start far in the flat tail: bisection has to rescue it
    double x2 = newton_solve(f, 4.9, opt);
    CHECK(x2 == Catch::Approx(1.9599639845400542).epsilon(1e-10));
}

TEST_CASE("newton_solve failure modes") {
    auto flat = [](double x) { return std::pair{1.0 + 0.0 * x, 0.0}; };
    CHECK_THROWS_AS(newton_solve(flat, 0.0), numerical_error);

    auto slow = [](double x) { return std::pair{std::atan(x), 1.0 / (1.0 + x * x)}; };
    NewtonOptions opt;
    opt.max_iterations = 3;
    opt.tol = 1e-15;
    CHECK_THROWS_AS(newton_solve(slow, 40.0, opt), numerical_error);

    NewtonOptions bad;
    bad.bracket = Bracket{2.0, 5.0};
    auto lin = [](double x) { return std::pair{x - 1.0, 1.0}; };
    CHECK_THROWS_AS(newton_solve(lin, 3.0, bad), numerical_error);
}

TEST_CASE("bisect") {
    auto f = [](double x) { return x * x - 2.0; };
    CHECK(bisect(f, 0.0, 2.0, 1e-13) == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(bisect(f, 2.0, 3.0), numerical_error);
}
