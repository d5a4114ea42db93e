#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "fba/log_arith.hpp"

using namespace fba;

TEST_CASE("log_sum_exp basics") {
    std::vector<double> half{std::log(0.5), std::log(0.5)};
    CHECK(log_sum_exp(half) == Catch::Approx(0.0).margin(1e-15));

    std::vector<double> empty;
    CHECK(log_sum_exp(empty) == neg_inf);

    // two probabilities of 1e-300: stays finite and exact in the log domain
    double tiny = std::log(1e-300);
    std::vector<double> tinies{tiny, tiny};
    double expected = std::log(2.0) - 300.0 * std::log(10.0);
    CHECK(log_sum_exp(tinies) ==
          Catch::Approx(expected).epsilon(1e-12));
}

TEST_CASE("log_sum_exp permutation invariance and monotonicity") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(-30.0, 0.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(8);
        for (double& x : v) x = u(rng);
        double before = log_sum_exp(v);
        std::shuffle(v.begin(), v.end(), rng);
        CHECK(log_sum_exp(v) == Catch::Approx(before).epsilon(1e-14));
        // raising one term raises the sum
        v[3] += 0.5;
        CHECK(log_sum_exp(v) > before);
    }
}

TEST_CASE("LogProb type") {
    CHECK(LogProb::zero().is_zero());
    CHECK(LogProb::one().prob() == 1.0);
    CHECK(LogProb::from_prob(0.25).log_value == Catch::Approx(std::log(0.25)));
    CHECK(LogProb(-1.0) < LogProb(-0.5));
    std::vector<LogProb> ps{LogProb::from_prob(0.5), LogProb::from_prob(0.5)};
    CHECK(log_sum_exp(ps).log_value == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("log_add / log_sub / log1mexp") {
    CHECK(log_add(neg_inf, neg_inf) == neg_inf);
    CHECK(log_add(0.0, neg_inf) == 0.0);
    CHECK(log_sub(std::log(0.75), std::log(0.25)) == Catch::Approx(std::log(0.5)));
    CHECK(log_sub(-3.0, -3.0) == neg_inf);
    CHECK(log1mexp(neg_inf) == 0.0);
    CHECK(log1mexp(std::log(0.25)) == Catch::Approx(std::log(0.75)));
    // complementary pair across the switch point
    for (double x : {-1e-12, -0.1, -0.69, -0.70, -5.0, -40.0}) {
        double c = log1mexp(x);
        CHECK(std::exp(x) + std::exp(c) == Catch::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("LogAccumulator matches batch log_sum_exp") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-700.0, 0.0);
    std::vector<double> v(200);
    for (double& x : v) x = u(rng);
    LogAccumulator acc;
    for (double x : v) acc.add(x);
    CHECK(acc.log_total() == Catch::Approx(log_sum_exp(v)).epsilon(1e-12));
}
