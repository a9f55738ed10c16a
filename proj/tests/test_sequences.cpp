#include <catch2/catch_amalgamated.hpp>
#include <pitr/sequences.hpp>

using namespace pitr;

static PolyQ theta_poly(std::initializer_list<long> v) { return poly_from_longs(v); }

// the cubic operator with shifts 0..3 used by the level-14 style family:
// theta^3 - x (2 theta + 1)(11 theta^2 + 11 theta + 5)
//         + x^2 (theta + 1)(121 theta^2 + 242 theta + 141)
//         - 98 x^3 (theta + 1)(theta + 2)(2 theta + 3)
static ThetaOperator cubic_op() {
    ThetaOperator op;
    op.terms.push_back({0, theta_poly({0, 0, 0, 1})});
    op.terms.push_back({1, -(theta_poly({1, 2}) * theta_poly({5, 11, 11}))});
    op.terms.push_back({2, theta_poly({1, 1}) * theta_poly({141, 242, 121})});
    op.terms.push_back(
        {3, make_rat(-98) * (theta_poly({1, 1}) * theta_poly({2, 1}) * theta_poly({3, 2}))});
    return op;
}

TEST_CASE("hypergeometric coefficients") {
    HGParams half3({make_rat(1, 2), make_rat(1, 2), make_rat(1, 2)},
                   {make_rat(1), make_rat(1)});
    auto c = hg_coeffs(half3, 5);
    REQUIRE(c[0] == make_rat(1));
    REQUIRE(c[1] == make_rat(1, 8));
    REQUIRE(c[3] == make_rat(125, 4096));

    HGParams s166({make_rat(1, 2), make_rat(1, 6), make_rat(5, 6)},
                  {make_rat(1), make_rat(1)});
    auto c2 = hg_coeffs(s166, 3);
    REQUIRE(c2[2] == make_rat(385, 13824));

    REQUIRE_THROWS_AS(HGParams({make_rat(1, 2)}, {make_rat(-1)}), std::domain_error);
}

TEST_CASE("quartic binomial sums") {
    auto a = quartic_binomial(6);
    std::vector<long> expect{1, 2, 18, 164, 1810, 21252};
    for (size_t i = 0; i < expect.size(); ++i) REQUIRE(a[i] == make_rat(expect[i]));
}

TEST_CASE("quartic binomial satisfies its recurrence") {
    // n^3 A_n = 2(2n-1)(3n^2-3n+1) A_{n-1} + 4(n-1)(4n-3)(4n-5) A_{n-2}
    PRecurrence rec;
    rec.q.resize(3);
    rec.q[0] = theta_poly({0, 0, 0, 1});
    rec.q[1] = make_rat(-2) * (theta_poly({-1, 2}) * theta_poly({1, -3, 3}));
    rec.q[2] = make_rat(-4) * (theta_poly({-1, 1}) * theta_poly({-3, 4}) * theta_poly({-5, 4}));
    rec.initial = {make_rat(1), make_rat(2)};
    auto via_rec = prec_terms(rec, 30);
    auto direct = quartic_binomial(30);
    REQUIRE(via_rec == direct);
}

TEST_CASE("level seven sequence") {
    auto c = level7_seq(7);
    std::vector<long> expect{1, 4, 48, 760, 13840, 273504, 5703096};
    for (size_t i = 0; i < expect.size(); ++i) REQUIRE(c[i] == make_rat(expect[i]));
    // independent closed form: sum_j C(n,j)^2 C(2j,n) C(n+j,j)
    auto far = level7_seq(40);
    for (size_t n = 0; n < far.size(); ++n) {
        REQUIRE(far[n].get_den() == 1);
        Int s(0);
        for (size_t j = 0; j <= n; ++j)
            s += binomial_int(n, j) * binomial_int(n, j) *
                 binomial_int(2 * j, n) * binomial_int(n + j, j);
        REQUIRE(far[n] == Rat(s));
    }
}

TEST_CASE("recurrence leading zero reports the offending index") {
    PRecurrence rec;
    rec.q.resize(2);
    rec.q[0] = theta_poly({-5, 1});  // vanishes at n = 5
    rec.q[1] = theta_poly({1});
    rec.initial = {make_rat(1)};
    try {
        prec_terms(rec, 10);
        FAIL("expected a throw");
    } catch (const std::domain_error& e) {
        REQUIRE(std::string(e.what()).find("n=5") != std::string::npos);
    }
}

TEST_CASE("theta operator converts to a recurrence") {
    auto rec = theta_to_recurrence(cubic_op(), {make_rat(1)});
    auto a = prec_terms(rec, 11);
    std::vector<std::string> expect{
        "1", "5", "33", "269", "2545", "26565", "295785",
        "3441765", "41336145", "508419125", "6370849633"};
    for (size_t i = 0; i < expect.size(); ++i)
        REQUIRE(a[i] == rat_from_string(expect[i]));
}

TEST_CASE("series solver agrees with the recurrence route") {
    auto rec = theta_to_recurrence(cubic_op(), {make_rat(1)});
    auto via_rec = prec_terms(rec, 51);
    auto via_series = series_solve_theta(cubic_op(), make_rat(1), 51);
    REQUIRE(via_rec == via_series);
    REQUIRE(via_rec[1] == make_rat(5));
    REQUIRE(via_rec[2] == make_rat(33));
}

TEST_CASE("convolution sequence") {
    auto a = conv_seq_ex5(5);
    REQUIRE(a[0] == make_rat(1));
    REQUIRE(a[1] == make_rat(15, 128));
    REQUIRE(a[2] == rat_from_string("26355/524288"));
    REQUIRE(a[3] == rat_from_string("1969275/67108864"));
    REQUIRE(a[4] == rat_from_string("173807709075/8796093022208"));
}

TEST_CASE("pulled-back coefficient extraction") {
    auto c = ntr_c_seq(11);
    std::vector<std::string> expect{
        "5",
        "15/64",
        "1485/16384",
        "27288795/536870912",
        "2302602795/68719476736",
        "26595933255/1099511627776",
        "170720161144100595/9223372036854775808",
        "2176717270747717665/147573952589676412928",
        "1830096863599869765405/151115727451828646838272",
        "50379180885394490211080595/4951760157141521099596496896",
        "5516559008293482312046222185/633825300114114700748351602688"};
    for (size_t i = 0; i < expect.size(); ++i)
        REQUIRE(c[i] == rat_from_string(expect[i]));
}

TEST_CASE("series helpers multiply and expand binomials") {
    auto x = ser_binom_pow(make_rat(1), make_rat(2), 6);  // (1+x)^2
    REQUIRE(x[0] == make_rat(1));
    REQUIRE(x[1] == make_rat(2));
    REQUIRE(x[2] == make_rat(1));
    REQUIRE(x[3] == make_rat(0));
    auto y = ser_mul(x, x, 6);  // (1+x)^4
    REQUIRE(y[2] == make_rat(6));
    REQUIRE(y[4] == make_rat(1));
    auto h = ser_binom_pow(make_rat(2), make_rat(1, 2), 4);  // (1+2x)^(1/2)
    REQUIRE(h[1] == make_rat(1));
    REQUIRE(h[2] == make_rat(-1, 2));
    REQUIRE(h[3] == make_rat(1, 2));
}
