#include <catch2/catch_amalgamated.hpp>
#include <pitr/closed_form.hpp>

using namespace pitr;

TEST_CASE("quadratic field arithmetic") {
    QuadExt a(make_rat(1), make_rat(1), 2);   // 1 + sqrt 2
    QuadExt b(make_rat(3), make_rat(-1), 2);  // 3 - sqrt 2
    REQUIRE((a + b) == QuadExt(make_rat(4)));
    REQUIRE((a * b) == QuadExt(make_rat(1), make_rat(2), 2));
    REQUIRE(a * inverse(a) == QuadExt(make_rat(1)));
    REQUIRE((a / a) == QuadExt(make_rat(1)));
    REQUIRE(a.norm() == make_rat(-1));
    // rationals mix with any radicand
    REQUIRE(QuadExt(make_rat(2)) * a == QuadExt(make_rat(2), make_rat(2), 2));
    QuadExt c(make_rat(0), make_rat(1), 3);
    REQUIRE_THROWS_AS(a + c, std::domain_error);
}

TEST_CASE("quadratic sign is exact") {
    REQUIRE(sign(QuadExt(make_rat(10), make_rat(-7), 2)) > 0);   // 10 > 7 sqrt2
    REQUIRE(sign(QuadExt(make_rat(-10), make_rat(7), 2)) < 0);
    REQUIRE(sign(QuadExt(make_rat(7), make_rat(-5), 2)) < 0);    // 7 < 5 sqrt2
    REQUIRE(sign(QuadExt(make_rat(-3), make_rat(0), 5)) < 0);
    REQUIRE(sign(QuadExt(make_rat(0))) == 0);
    // 2 - sqrt(4) vanishes after normalization of b = 0 cases only; use norm
    REQUIRE(sign(QuadExt(make_rat(-2), make_rat(1), 4)) == 0);
}

TEST_CASE("sqrt_exact finds roots in the same field") {
    QuadExt x(make_rat(3), make_rat(2), 2);  // (1 + sqrt2)^2
    auto r = sqrt_exact(x);
    REQUIRE(r.has_value());
    REQUIRE(*r * *r == x);
    REQUIRE(sign(*r) > 0);

    QuadExt y(make_rat(17), make_rat(12), 2);  // (3 + 2 sqrt2)^2
    auto r2 = sqrt_exact(y);
    REQUIRE(r2.has_value());
    REQUIRE(*r2 == QuadExt(make_rat(3), make_rat(2), 2));

    // 25 + 22 sqrt2 is not a square in Q(sqrt2)
    REQUIRE_FALSE(sqrt_exact(QuadExt(make_rat(25), make_rat(22), 2)).has_value());
    // rational perfect square
    auto r3 = sqrt_exact(QuadExt(make_rat(9, 4)));
    REQUIRE(r3.has_value());
    REQUIRE(r3->to_rat() == make_rat(3, 2));
    // negative numbers have no real root
    REQUIRE_FALSE(sqrt_exact(QuadExt(make_rat(-4))).has_value());
}

TEST_CASE("quadratic literal round trip") {
    for (const char* s : {"3/4", "1/2-7/4*sqrt(2)", "-sqrt(5)", "8*sqrt(7)",
                          "-11/3+sqrt(3)"}) {
        QuadExt q = quad_from_string(s);
        REQUIRE(quad_from_string(quad_to_string(q)) == q);
    }
    QuadExt q = quad_from_string("5/2-7/4*sqrt(2)");
    REQUIRE(q.a == make_rat(5, 2));
    REQUIRE(q.b == make_rat(-7, 4));
    REQUIRE(q.d == 2);
    REQUIRE_THROWS_AS(quad_from_string("junk("), std::invalid_argument);
}

TEST_CASE("eval_quad matches float expansion") {
    PrecisionCtx ctx = PrecisionCtx::for_digits(50);
    QuadExt q(make_rat(10), make_rat(-7), 2);
    HReal v = eval_quad(q, ctx) * HReal::from_rat(make_rat(1, 4), ctx);
    // (10 - 7 sqrt2)/4 = 0.02512627...
    REQUIRE(std::abs(v.to_double() - 0.025126265847084) < 1e-12);
}

TEST_CASE("polynomial division and gcd") {
    PolyQ a = poly_from_longs({-1, 0, 1});      // x^2 - 1
    PolyQ b = poly_from_longs({1, 1});          // x + 1
    PolyQ q, r;
    poly_divmod(a, b, q, r);
    REQUIRE(r.is_zero());
    REQUIRE(q == poly_from_longs({-1, 1}));
    PolyQ g = poly_gcd(a, b);
    REQUIRE(g == monic(b));
    REQUIRE(poly_gcd(poly_from_longs({1, 2, 1}), poly_from_longs({1, 1})) ==
            poly_from_longs({1, 1}));
}

TEST_CASE("rational functions are canonical") {
    RatFun x = RatFun::var();
    RatFun f = (x * x - RatFun::from_rat(make_rat(1))) /
               (x + RatFun::from_rat(make_rat(1)));
    RatFun g = x - RatFun::from_rat(make_rat(1));
    REQUIRE(ratfun_equal(f, g));
    RatFun h = RatFun::from_rat(make_rat(2)) * x / RatFun::from_rat(make_rat(2));
    REQUIRE(ratfun_equal(h, x));
}

TEST_CASE("first certificate identity holds as rational functions") {
    // 1 - 27 x^2 / (4 - x)^3 == (1 - x)(x + 8)^2 / (4 - x)^3
    RatFun x = RatFun::var();
    RatFun one = RatFun::from_rat(make_rat(1));
    RatFun den = ratfun_pow(RatFun::from_rat(make_rat(4)) - x, 3);
    RatFun lhs = one - RatFun::from_rat(make_rat(27)) * x * x / den;
    RatFun rhs = (one - x) * ratfun_pow(x + RatFun::from_rat(make_rat(8)), 2) / den;
    REQUIRE(ratfun_equal(lhs, rhs));
}

TEST_CASE("derivative and theta") {
    RatFun x = RatFun::var();
    RatFun f = x * x * x;
    REQUIRE(ratfun_equal(ratfun_derivative(f),
                         RatFun::from_rat(make_rat(3)) * x * x));
    REQUIRE(ratfun_equal(theta(f), RatFun::from_rat(make_rat(3)) * f));
    // log-derivative style: theta(fg)/(fg) = theta(f)/f + theta(g)/g
    RatFun g = (x + RatFun::from_rat(make_rat(1)));
    RatFun lhs = theta(f * g) / (f * g);
    RatFun rhs = theta(f) / f + theta(g) / g;
    REQUIRE(ratfun_equal(lhs, rhs));
}

TEST_CASE("order_at counts zeros and poles") {
    RatFun x = RatFun::var();
    RatFun one = RatFun::from_rat(make_rat(1));
    RatFun f = ratfun_pow(one - x, 2) / (x * ratfun_pow(one + x, 3));
    REQUIRE(order_at(f, make_rat(1)) == 2);
    REQUIRE(order_at(f, make_rat(0)) == -1);
    REQUIRE(order_at(f, make_rat(-1)) == -3);
    REQUIRE(order_at(f, make_rat(5)) == 0);
    // quadratic point: x^2 - 2 x - 1 vanishes doubly in (x^2-2x-1)^2 / x
    PolyQ m = poly_from_longs({-1, -2, 1});
    RatFun g = RatFun(m, PolyQ::constant(Rat(1)));
    QuadExt x0(make_rat(1), make_rat(1), 2);  // 1 + sqrt2, root of m
    REQUIRE(order_at(g * g / x, x0) == 2);
    REQUIRE(order_at(one / g, x0) == -1);
}

TEST_CASE("ratfun eval at rational and quadratic points") {
    RatFun x = RatFun::var();
    RatFun one = RatFun::from_rat(make_rat(1));
    RatFun f = (one + x) / (one - x);
    REQUIRE(ratfun_eval(f, make_rat(1, 3)) == make_rat(2));
    REQUIRE_THROWS_AS(ratfun_eval(f, make_rat(1)), std::domain_error);
    QuadExt s2(make_rat(0), make_rat(1), 2);
    QuadExt got = ratfun_eval_quad(f, s2);
    // (1 + sqrt2)/(1 - sqrt2) = -3 - 2 sqrt2
    REQUIRE(got == QuadExt(make_rat(-3), make_rat(-2), 2));
}

TEST_CASE("polynomial literal round trip") {
    PolyQ p = poly_from_longs({3, 0, -7, 2});
    REQUIRE(poly_from_string(poly_to_string(p)) == p);
    RatFun f(poly_from_longs({1, 1}), poly_from_longs({-2, 0, 1}));
    REQUIRE(ratfun_equal(ratfun_from_string(ratfun_to_string(f)), f));
}

TEST_CASE("closed form eval and round trip") {
    PrecisionCtx ctx = PrecisionCtx::for_digits(60);
    // 2 sqrt2 / pi
    ClosedForm f = cf_quot(cf_prod({cf_rat(make_rat(2)), cf_sqrt(make_rat(2))}),
                           cf_pi_pow(2));
    HReal v = eval_closed_form(f, ctx);
    HReal expect = HReal::from_long(2, ctx) * sqrt_rat(make_rat(2), ctx) / pi_const(ctx);
    REQUIRE((v - expect).close_to(HReal::zero(ctx), -180.0));
    REQUIRE(cf_equal_structural(cf_from_string(cf_to_string(f)), f));

    // gamma(3/4)^(-4) style quotient with pi powers
    ClosedForm g = cf_quot(cf_rat(make_rat(2)),
                           cf_prod({cf_gamma(make_rat(3, 4)), cf_gamma(make_rat(3, 4)),
                                    cf_gamma(make_rat(3, 4)), cf_gamma(make_rat(3, 4))}));
    HReal gv = eval_closed_form(g, ctx);
    HReal g34 = gamma_rat(make_rat(3, 4), ctx);
    HReal ge = HReal::from_long(2, ctx) / (g34 * g34 * g34 * g34);
    REQUIRE((gv - ge).close_to(HReal::zero(ctx), -180.0));
}

TEST_CASE("closed form canonical comparison merges factors") {
    ClosedForm a = cf_prod({cf_rat(make_rat(1, 2)), cf_sqrt(make_rat(8))});
    ClosedForm b = cf_sqrt(make_rat(2));
    REQUIRE(cf_equal_canonical(a, b));
    ClosedForm c = cf_quot(cf_prod({cf_rat(make_rat(4))}), cf_pi_pow(2));
    ClosedForm d = cf_prod({cf_rat(make_rat(4)), cf_pi_pow(-2)});
    REQUIRE(cf_equal_canonical(c, d));
    REQUIRE_FALSE(cf_equal_canonical(a, c));
}

TEST_CASE("closed form roots simplify when exact") {
    // (729/64)^(1/6) = 3/2
    ClosedForm r = cf_root(make_rat(729, 64), 6);
    REQUIRE(r->kind == CFKind::kRat);
    REQUIRE(r->q == make_rat(3, 2));
    ClosedForm nr = cf_root(make_rat(4, 27), 6);
    REQUIRE(nr->kind == CFKind::kRoot);
    PrecisionCtx ctx = PrecisionCtx::for_digits(40);
    HReal v = eval_closed_form(nr, ctx);
    HReal v6 = v.pow_si(6);
    HReal expect = HReal::from_rat(make_rat(4, 27), ctx);
    REQUIRE((v6 - expect).close_to(HReal::zero(ctx), -120.0));
}

TEST_CASE("surd square roots fold into the field when possible") {
    ClosedForm f = cf_sqrt_quad(QuadExt(make_rat(3), make_rat(2), 2));
    // sqrt(3 + 2 sqrt2) = 1 + sqrt2
    PrecisionCtx ctx = PrecisionCtx::for_digits(40);
    HReal v = eval_closed_form(f, ctx);
    HReal expect = HReal::from_long(1, ctx) + sqrt_rat(make_rat(2), ctx);
    REQUIRE((v - expect).close_to(HReal::zero(ctx), -120.0));
    REQUIRE(f->kind == CFKind::kSum);

    ClosedForm g = cf_sqrt_quad(QuadExt(make_rat(25), make_rat(22), 2));
    REQUIRE(g->kind == CFKind::kSqrtQuad);
    HReal gv = eval_closed_form(g, ctx);
    HReal sq = gv * gv;
    HReal expect2 = eval_quad(QuadExt(make_rat(25), make_rat(22), 2), ctx);
    REQUIRE((sq - expect2).close_to(HReal::zero(ctx), -120.0));
}
