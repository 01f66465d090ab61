#include <doctest.h>

#include "gridshare/errors.hpp"
#include "gridshare/ratio.hpp"
#include "oracle.hpp"

using gridshare::Ratio;

TEST_CASE("ratio normalizes sign and common factors") {
    CHECK(Ratio(2, 4) == Ratio(1, 2));
    CHECK(Ratio(1, -2) == Ratio(-1, 2));
    CHECK(Ratio(3, 6).num() == 1);
    CHECK(Ratio(3, 6).den() == 2);
    CHECK(Ratio(0, 7) == Ratio(0, 1));
    CHECK(Ratio(1, 3) < Ratio(1, 2));
}

TEST_CASE("zero denominator is rejected") { CHECK_THROWS_AS(Ratio(1, 0), gridshare::ConfigError); }

TEST_CASE("ties round half up") {
    CHECK(Ratio(28125, 1000).to_string(2) == "28.13");
    CHECK(Ratio(5, 1000).to_string(2) == "0.01");
    CHECK(Ratio(-125, 1000).scaled(2) == -12);
    CHECK(Ratio(1, 8).scaled(2) == 13);
    CHECK(Ratio(0, 1).to_string(2) == "0.00");
    CHECK(Ratio(7, 1).to_string(0) == "7");
    CHECK(Ratio(-1, 4).to_string(1) == "-0.2");
}

TEST_CASE("percent formatting agrees with the integer oracle") {
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t den = oracle::uniform(1, 2000000);
        const std::int64_t num = oracle::uniform(0, static_cast<int>(den));
        CAPTURE(num);
        CAPTURE(den);
        CHECK(Ratio::percent(num, den).to_string(2) == oracle::pct(num, den));
        CHECK(Ratio::percent(num, den).to_string(1) == oracle::pct(num, den, 1));
    }
}

TEST_CASE("rounded matches the text form") {
    CHECK(Ratio::percent(8704, 1257984).rounded(2) == doctest::Approx(0.69));
    CHECK(Ratio::percent(207360, 234112).rounded(1) == doctest::Approx(88.6));
}
