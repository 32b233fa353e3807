#include <doctest.h>

#include "oracles.hpp"
#include "sigwalk/scalar.hpp"
#include "sigwalk/sigcore.hpp"

#include <vector>

using namespace sigwalk;

TEST_CASE("rationals parse exactly") {
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("1.5e-3") == Rational(3, 2000));
    CHECK(parse_rational(" 7 ") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK(to_string(Rational(4) / 2) == "2");
    CHECK(to_string(Rational(-1, 3)) == "-1/3");
    for (const char* s : {"1/3", "-22/7", "0", "123456789012345678901234567891/7"})
        CHECK(to_string(parse_rational(s)) == std::string(s));
}

TEST_CASE("scalars stay exact until a double enters") {
    Scalar a(Rational(1, 3)), b(Rational(2, 3));
    CHECK((a + b).exact());
    CHECK(a + b == Scalar(1));
    Scalar c = a * Scalar(0.5);
    CHECK_FALSE(c.exact());
    CHECK(c.to_double() == doctest::Approx(1.0 / 6));
    CHECK_THROWS_AS(a / Scalar(0), DomainError);
    CHECK(abs(Scalar(Rational(-2, 5))) == Scalar(Rational(2, 5)));
    CHECK(Scalar(Rational(1, 2)).str() == "1/2");
    CHECK(Scalar(0.25).str() == "0.25");
    CHECK_THROWS(Scalar(0.5).rational());
}

TEST_CASE("signatures are nonincreasing") {
    CHECK_NOTHROW(Signature({2, 1, 1, -3}));
    CHECK_THROWS_AS(Signature({1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Signature({}), std::invalid_argument);
    Signature s({3, 0, -1});
    CHECK(s.rank() == 3);
    CHECK(s.total() == 2);
    CHECK_FALSE(s.is_partition());
    CHECK(Signature::zero(2) == Signature({0, 0}));
}

TEST_CASE("interlacing") {
    CHECK(interlaces(Signature({1, 0}), Signature({2, 0})));
    CHECK(interlaces(Signature({1, 0}), Signature({1, 1})));
    CHECK_FALSE(interlaces(Signature({2, 0}), Signature({1, 0})));
    CHECK(interlaces(Signature({0, 0}), Signature({0, 0})));
    CHECK(interlaces(Signature({-1, -3}), Signature({0, -2})));
    CHECK_FALSE(interlaces(Signature({-1, -3}), Signature({0, -4})));
    CHECK_THROWS(interlaces(Signature({1}), Signature({1, 0})));
}

TEST_CASE("dimension") {
    CHECK(dimension(Signature({1, 0})) == 2);
    CHECK(dimension(Signature({2, 1})) == 2);
    CHECK(dimension(Signature({2, 1, 0})) == 8);
    CHECK(dimension(Signature({0, -1})) == 2);
    CHECK(dimension(Signature({5})) == 1);
    for (int n = 1; n <= 4; ++n)
        for (const auto& lambda : signature_window(n, -2, 2)) {
            CHECK(dimension(lambda) == oracle::weyl_dimension(lambda.parts()));
            CHECK(dimension(shift(lambda, 3)) == dimension(lambda));
        }
}

TEST_CASE("window enumeration") {
    CHECK(signature_window(1, -3, 3).size() == 7);
    CHECK(signature_window(2, -3, 3).size() == 28);
    CHECK(signature_window(3, -3, 3).size() == 84);
    auto w = signature_window(2, 0, 1);
    REQUIRE(w.size() == 3);
    for (const auto& s : w) CHECK(s[0] >= s[1]);
}

TEST_CASE("weyl action and weights") {
    std::vector<int> perm{2, 0, 1};
    Weight x({5, 6, 7});
    Weight y = weyl_act(perm, x);
    CHECK(y == Weight({6, 7, 5}));
    CHECK((x - x) == Weight::zero(3));
    CHECK((x + Weight({1, 1, 1})).total() == 21);
}

TEST_CASE("parse and format") {
    CHECK(parse_signature("2,1,0") == Signature({2, 1, 0}));
    CHECK(parse_signature("(0, -1)") == Signature({0, -1}));
    CHECK(format(Signature({3, -2})) == "3,-2");
    CHECK(parse_weight("1,3") == Weight({1, 3}));
    CHECK_THROWS_AS(parse_signature("1,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_signature("1,x"), ParseError);
    CHECK_THROWS_AS(parse_signature(""), ParseError);
}
