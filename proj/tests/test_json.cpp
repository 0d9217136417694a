#include "shq/json_io.hpp"

#include <doctest.h>

#include <random>

using namespace shq;

TEST_CASE("rational encoding") {
    CHECK(to_json(Rational(3)) == Json(3));
    CHECK(to_json(Rational(-1, 2)) == Json("-1/2"));
    CHECK(rational_from_json(Json("6/4")) == Rational(3, 2));
    CHECK(rational_from_json(Json(-2)) == Rational(-2));
    CHECK_THROWS_AS(rational_from_json(Json("x/2")), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_json(Json::array()), std::invalid_argument);
}

TEST_CASE("monomials round trip bit-exactly") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> node(1, 3), shift(-9, 9), e(-3, 3), num(-7, 7), den(1, 4), zeta(0, 7);
    for (int t = 0; t < 200; ++t) {
        ExponentMap v;
        for (int k = 0; k < 5; ++k) {
            const int x = e(rng);
            if (x) v[SpectralIndex{node(rng), shift(rng)}] = x;
        }
        ConstantFactor c;
        for (int i = 1; i <= 3; ++i)
            if (rng() % 2) c.set(i, NodeConst::make(Rational(num(rng), den(rng)), zeta(rng)));
        const LWeightMonomial m = LWeightMonomial::from_exps(v, c);
        const Json j = to_json(m);
        const LWeightMonomial back = monomial_from_json(Json::parse(j.dump()));
        CHECK(back == m);
        CHECK(to_json(back).dump() == j.dump());
    }
}

TEST_CASE("malformed monomials are rejected") {
    CHECK_THROWS_AS(monomial_from_json(Json::parse(R"({"const": {}})")), std::invalid_argument);
    CHECK_THROWS_AS(monomial_from_json(Json::parse(R"({"exps": [[1, 2]]})")), std::invalid_argument);
    CHECK_THROWS_AS(monomial_from_json(Json::parse(R"({"exps": [], "const": {"a": {"q": 1}}})")), std::invalid_argument);
    const LWeightMonomial m = monomial_from_json(Json::parse(R"({"exps": [[1, 0, 1], [1, 0, -1]]})"));
    CHECK(m.is_identity());
}
