#include <catch2/catch_amalgamated.hpp>
#include <pitr/exact.hpp>

using namespace pitr;

TEST_CASE("factorial and binomial") {
    REQUIRE(factorial_int(0) == 1);
    REQUIRE(factorial_int(5) == 120);
    REQUIRE(factorial_int(12) == Int(479001600));
    REQUIRE(binomial_int(10, 3) == 120);
    REQUIRE(binomial_int(0, 0) == 1);
}

TEST_CASE("pochhammer exact values") {
    REQUIRE(pochhammer(make_rat(1), 5) == make_rat(120));
    REQUIRE(pochhammer(make_rat(1, 2), 3) == make_rat(15, 8));
    REQUIRE(pochhammer(make_rat(1, 2), 0) == make_rat(1));
    // (1/2)_n * 4^n / (2n)! = 1 / n!  restated: (1/2)_n = (2n)! / (4^n n!)
    for (unsigned long n = 0; n <= 8; ++n) {
        Rat lhs = pochhammer(make_rat(1, 2), n);
        Rat rhs = Rat(factorial_int(2 * n)) /
                  (Rat(Int(1) << (2 * n)) * Rat(factorial_int(n)));
        REQUIRE(lhs == rhs);
    }
    REQUIRE(pochhammer(make_rat(-3), 4) == make_rat(0));
    REQUIRE(pochhammer(make_rat(-3), 3) == make_rat(-6));
}

TEST_CASE("is_nonpositive_int") {
    REQUIRE(is_nonpositive_int(make_rat(0)));
    REQUIRE(is_nonpositive_int(make_rat(-7)));
    REQUIRE_FALSE(is_nonpositive_int(make_rat(3)));
    REQUIRE_FALSE(is_nonpositive_int(make_rat(-1, 2)));
}

TEST_CASE("rational string round trip") {
    for (Rat q : {make_rat(0), make_rat(-3, 7), make_rat(22, 4), make_rat(99, 1)}) {
        REQUIRE(rat_from_string(rat_to_string(q)) == q);
    }
    REQUIRE(rat_to_string(make_rat(22, 4)) == "11/2");
    REQUIRE(rat_to_string(make_rat(5)) == "5");
    REQUIRE_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
    REQUIRE_THROWS_AS(rat_from_string("abc"), std::invalid_argument);
}

TEST_CASE("sqrt_split extracts square parts") {
    SqrtSplit s = sqrt_split(make_rat(8));
    REQUIRE(s.outside == make_rat(2));
    REQUIRE(s.inside == 2);

    s = sqrt_split(make_rat(255));
    REQUIRE(s.outside == make_rat(1));
    REQUIRE(s.inside == 255);

    s = sqrt_split(make_rat(9, 4));
    REQUIRE(s.outside == make_rat(3, 2));
    REQUIRE(s.inside == 1);

    s = sqrt_split(make_rat(1, 2));
    REQUIRE(s.outside * s.outside * Rat(s.inside) == make_rat(1, 2));

    s = sqrt_split(make_rat(2025, 49));
    REQUIRE(s.outside == make_rat(45, 7));
    REQUIRE(s.inside == 1);

    // large squarefree part survives intact
    s = sqrt_split(make_rat(4 * 1009));
    REQUIRE(s.outside == make_rat(2));
    REQUIRE(s.inside == 1009);

    REQUIRE_THROWS_AS(sqrt_split(make_rat(-2)), std::domain_error);
}

TEST_CASE("perfect_root detects exact roots") {
    Rat out;
    REQUIRE(perfect_root(make_rat(729, 64), 6, out));
    REQUIRE(out == make_rat(3, 2));
    REQUIRE(perfect_root(make_rat(27), 3, out));
    REQUIRE(out == make_rat(3));
    REQUIRE_FALSE(perfect_root(make_rat(2), 2, out));
    REQUIRE_FALSE(perfect_root(make_rat(8), 2, out));
}
