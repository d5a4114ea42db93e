#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fba/channel.hpp"

using namespace fba;

TEST_CASE("channel parse") {
    std::istringstream in(
        "# binary symmetric, p = 0.11\n"
        "2 2\n"
        "0.89 0.11\n"
        "0.11 0.89\n");
    Channel ch = Channel::parse(in);
    CHECK(ch.input_size() == 2);
    CHECK(ch.output_size() == 2);
    CHECK(ch(0, 1) == 0.11);
    CHECK(ch.is_cover_thomas_symmetric());
}

TEST_CASE("channel parse errors") {
    std::istringstream missing("2 2\n0.89 0.11\n");
    CHECK_THROWS_AS(Channel::parse(missing), parse_error);

    std::istringstream badsum("2 2\n0.9 0.2\n0.11 0.89\n");
    CHECK_THROWS_AS(Channel::parse(badsum), parse_error);

    std::istringstream negative("2 2\n1.1 -0.1\n0.11 0.89\n");
    CHECK_THROWS_AS(Channel::parse(negative), parse_error);

    std::istringstream badheader("two two\n");
    CHECK_THROWS_AS(Channel::parse(badheader), parse_error);

    std::istringstream extra("1 2\n0.5 0.5 0.5\n");
    CHECK_THROWS_AS(Channel::parse(extra), parse_error);
}

TEST_CASE("symmetry detection") {
    CHECK(Channel::bsc(0.11).is_cover_thomas_symmetric());
    CHECK(Channel::bsc(0.5).is_cover_thomas_symmetric());
    // cyclic shifts of (0.7, 0.2, 0.1)
    Channel cyc(3, 3, {0.7, 0.2, 0.1, 0.1, 0.7, 0.2, 0.2, 0.1, 0.7});
    CHECK(cyc.is_cover_thomas_symmetric());
    // erasure channel: rows are permutations, columns are not
    CHECK_FALSE(Channel::binary_erasure(0.3).is_cover_thomas_symmetric());
    Channel asym(2, 2, {0.9, 0.1, 0.2, 0.8});
    CHECK_FALSE(asym.is_cover_thomas_symmetric());
}

TEST_CASE("input distribution validation") {
    InputDistribution u = InputDistribution::uniform(4);
    CHECK_NOTHROW(u.validate());
    InputDistribution bad{{0.5, 0.6}};
    CHECK_THROWS_AS(bad.validate(), precondition_error);
    InputDistribution neg{{1.5, -0.5}};
    CHECK_THROWS_AS(neg.validate(), precondition_error);
    InputDistribution zeros{{1.0, 0.0}};
    CHECK_NOTHROW(zeros.validate());
}
