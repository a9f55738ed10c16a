#include <catch2/catch_amalgamated.hpp>
#include <pitr/mpcore.hpp>

using namespace pitr;

// reference digits computed with an independent arbitrary-precision package
static const char* kPi105 =
    "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214809";
static const char* kSqrt2 =
    "1.41421356237309504880168872420969807856967187537694807317667973799073247846210703885038753432764157273501385";

static HReal parse_ref(const char* s, const PrecisionCtx& ctx) {
    HReal r(ctx.work_bits());
    mpfr_set_str(r.raw(), s, 10, MPFR_RNDN);
    // decimal literal carries ~108 digits; everything past that is unknown
    r.set_err_log2(-108 * 3.32);
    return r;
}

TEST_CASE("pi matches reference digits") {
    PrecisionCtx ctx = PrecisionCtx::for_digits(110);
    HReal pi = pi_const(ctx);
    HReal ref = parse_ref(kPi105, ctx);
    REQUIRE((pi - ref).close_to(HReal::zero(ctx.work_bits()), -340.0));
}

TEST_CASE("pi agrees with the library constant") {
    // pi_const uses its own arctan series; cross-check against mpfr
    PrecisionCtx ctx = PrecisionCtx::for_digits(200);
    HReal pi = pi_const(ctx);
    HReal lib(ctx.work_bits());
    mpfr_const_pi(lib.raw(), MPFR_RNDN);
    lib.set_err_log2(lib.ulp_log2());
    HReal diff = pi - lib;
    REQUIRE(diff.close_to(HReal::zero(ctx.work_bits()), -640.0));
}

TEST_CASE("pi error bound shrinks with precision") {
    double prev = 0.0;
    bool first = true;
    for (int d : {50, 100, 200, 400}) {
        PrecisionCtx ctx = PrecisionCtx::for_digits(d);
        HReal pi = pi_const(ctx);
        REQUIRE(pi.err_log2() < -3.0 * d);
        if (!first) REQUIRE(pi.err_log2() < prev - 100.0);
        prev = pi.err_log2();
        first = false;
    }
}

TEST_CASE("sqrt_rat matches reference digits") {
    PrecisionCtx ctx = PrecisionCtx::for_digits(110);
    HReal s2 = sqrt_rat(make_rat(2), ctx);
    HReal ref = parse_ref(kSqrt2, ctx);
    REQUIRE((s2 - ref).close_to(HReal::zero(ctx.work_bits()), -340.0));
    HReal back = s2 * s2 - HReal::from_long(2, ctx.work_bits());
    REQUIRE(back.close_to(HReal::zero(ctx.work_bits()), -340.0));
}

TEST_CASE("exact integers carry no error") {
    PrecisionCtx ctx(128, 16);
    HReal a = HReal::from_long(7, ctx.work_bits());
    REQUIRE(a.err_log2() == kExactErr);
    HReal b = a + a;
    REQUIRE(b.err_log2() <= b.ulp_log2());
}

TEST_CASE("division by a value not separated from zero throws") {
    PrecisionCtx ctx(128, 16);
    HReal one = HReal::from_long(1, ctx.work_bits());
    HReal z = HReal::zero(ctx.work_bits());
    REQUIRE_THROWS_AS(one / z, std::domain_error);
    // a tiny value whose error bound covers zero must also be rejected
    HReal fuzzy = HReal::from_rat(make_rat(1, 1000000), ctx.work_bits());
    fuzzy.set_err_log2(-2.0);
    REQUIRE_THROWS_AS(one / fuzzy, std::domain_error);
}

TEST_CASE("sqrt of a negative value throws") {
    PrecisionCtx ctx(128, 16);
    HReal neg = HReal::from_long(-3, ctx.work_bits());
    REQUIRE_THROWS_AS(neg.sqrt(), std::domain_error);
}

TEST_CASE("basel partial sums bracket pi^2/6") {
    // independent oracle for pi: sum 1/n^2 -> pi^2/6 with tail in (1/(N+1), 1/N)
    PrecisionCtx ctx = PrecisionCtx::for_digits(30);
    long N = 2000;
    Rat acc(0);
    for (long n = 1; n <= N; ++n) acc += make_rat(1, n * n);
    HReal partial = HReal::from_rat(acc, ctx.work_bits());
    HReal pi = pi_const(ctx);
    HReal target = pi * pi / HReal::from_long(6, ctx.work_bits());
    HReal tail = target - partial;
    HReal lo = HReal::from_rat(make_rat(1, N + 1), ctx.work_bits());
    HReal hi = HReal::from_rat(make_rat(1, N), ctx.work_bits());
    REQUIRE((tail - lo).sign() > 0);
    REQUIRE((hi - tail).sign() > 0);
}

TEST_CASE("pow_rat computes rational powers of positive values") {
    PrecisionCtx ctx = PrecisionCtx::for_digits(60);
    HReal x = HReal::from_rat(make_rat(729, 64), ctx.work_bits());
    HReal r = x.pow_rat(make_rat(1, 6));
    HReal expect = HReal::from_rat(make_rat(3, 2), ctx.work_bits());
    REQUIRE((r - expect).close_to(HReal::zero(ctx.work_bits()), -180.0));
}

TEST_CASE("to_decimal truncates to certified digits") {
    PrecisionCtx ctx = PrecisionCtx::for_digits(50);
    HReal pi = pi_const(ctx);
    std::string s = pi.to_decimal(40);
    REQUIRE(s.substr(0, 12) == "3.1415926535");
    // asking for more digits than certified must not fabricate them
    HReal rough = pi;
    rough.set_err_log2(-30.0);
    std::string t = rough.to_decimal(40);
    REQUIRE(t.size() < s.size());
}

TEST_CASE("exp and log round trip") {
    PrecisionCtx ctx = PrecisionCtx::for_digits(60);
    HReal x = HReal::from_rat(make_rat(7, 3), ctx.work_bits());
    HReal y = log_h(exp_h(x));
    REQUIRE((y - x).close_to(HReal::zero(ctx.work_bits()), -180.0));
}

TEST_CASE("precision context validates its arguments") {
    REQUIRE_THROWS_AS(PrecisionCtx(32, 8), std::invalid_argument);
    REQUIRE_NOTHROW(PrecisionCtx(64, 1));
}
