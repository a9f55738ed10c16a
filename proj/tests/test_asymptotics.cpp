#include <catch2/catch_amalgamated.hpp>
#include <pitr/asymptotics.hpp>
#include <pitr/gamma.hpp>

using namespace pitr;

TEST_CASE("pochhammer-normalized quotients are exactly one") {
    SCProblem p;
    p.seq = SeriesSeq::hyper(HGParams({make_rat(1, 2)}, {}));
    PrecisionCtx ctx(128);
    auto q = sc_quotients(p, 20, ctx);
    REQUIRE(q.size() == 20);
    for (auto& v : q)
        REQUIRE((v - HReal::from_long(1, ctx)).abs().to_double() < 1e-30);
}

TEST_CASE("richardson is exact on truncated 1/n expansions") {
    PrecisionCtx ctx(192);
    std::vector<HReal> q1, q2;
    for (long n = 1; n <= 64; ++n) {
        q1.push_back(HReal::from_rat(Rat(1) + make_rat(1, n), ctx));
        q2.push_back(
            HReal::from_rat(Rat(1) + make_rat(1, n) + make_rat(1, n * n), ctx));
    }
    AsymEstimate e1 = richardson(q1, 1);
    REQUIRE((e1.value - HReal::from_long(1, ctx)).abs().to_double() < 1e-45);
    REQUIRE(e1.stability_digits >= 1);
    REQUIRE(e1.terms_used == 64);
    AsymEstimate e2 = richardson(q2, 2);
    REQUIRE((e2.value - HReal::from_long(1, ctx)).abs().to_double() < 1e-40);
    REQUIRE(e2.stability_digits >= 2);
}

TEST_CASE("richardson input validation and regularity guard") {
    PrecisionCtx ctx(128);
    std::vector<HReal> q;
    for (long n = 1; n <= 5; ++n)
        q.push_back(HReal::from_rat(Rat(1) + make_rat(1, n), ctx));
    REQUIRE_THROWS_AS(richardson(q, 0), std::invalid_argument);
    REQUIRE_THROWS_AS(richardson(q, 3), std::invalid_argument);
    // oscillation that survives on the geometric ladder is rejected
    std::vector<HReal> osc;
    for (long n = 1; n <= 64; ++n) {
        long oct = 0;
        for (long m = n; m > 1; m >>= 1) ++oct;
        osc.push_back(HReal::from_long(oct % 2 == 0 ? 1 : -1, ctx));
    }
    REQUIRE_THROWS_AS(richardson(osc, 2), std::runtime_error);
    // monotone divergence extrapolates but never stabilizes
    std::vector<HReal> lin;
    for (long n = 1; n <= 64; ++n) lin.push_back(HReal::from_long(n, ctx));
    REQUIRE(richardson(lin, 3).stability_digits <= 2);
}

TEST_CASE("quartic binomial radius sixteen limit") {
    SCProblem p;
    p.seq = SeriesSeq::named(SeqKind::kQuartic);
    p.r = QuadExt(make_rat(1, 16));
    p.weight = WeightPoly{{QuadExt(0), QuadExt(1)}};
    AsymEstimate est = sc_limit(p, 6, 5000, 6);
    REQUIRE(est.target_reached);
    REQUIRE(est.terms_used <= 5000);
    PrecisionCtx ctx(256);
    HReal target = sqrt_rat(make_rat(2), ctx) / pi_const(ctx);
    REQUIRE((est.value - target).abs().to_double() < 1e-6);
}

TEST_CASE("three-term recurrence radius twenty-seven limit") {
    SCProblem p;
    p.seq = SeriesSeq::named(SeqKind::kLevel7);
    p.r = QuadExt(make_rat(1, 27));
    p.weight = WeightPoly{{QuadExt(0), QuadExt(1)}};
    AsymEstimate est = sc_limit(p, 6, 5000, 6);
    REQUIRE(est.target_reached);
    PrecisionCtx ctx(256);
    HReal target = HReal::from_long(3, ctx) * sqrt_rat(make_rat(3), ctx) /
                   (HReal::from_long(4, ctx) * pi_const(ctx));
    REQUIRE((est.value - target).abs().to_double() < 1e-6);
}

TEST_CASE("cubic sequence constant at the quadratic-irrational radius") {
    SCProblem p;
    p.seq = SeriesSeq::named(SeqKind::kCubicL14);
    p.r = QuadExt(make_rat(9, 49), make_rat(-4, 49), 2);  // 1/(9+4 sqrt 2)
    p.weight = WeightPoly{{QuadExt(0), QuadExt(1)}};
    AsymEstimate est = sc_limit(p, 10, 10000, 6);
    REQUIRE(est.target_reached);
    PrecisionCtx ctx(256);
    // quotients tend to C sqrt(pi), C = sqrt(184 + 11 sqrt 2)/(4 sqrt 2 pi^{3/2})
    HReal c_est = est.value / pi_const(ctx).sqrt();
    HReal c_ref = (HReal::from_long(184, ctx) +
                   HReal::from_long(11, ctx) * sqrt_rat(make_rat(2), ctx))
                      .sqrt() /
                  (HReal::from_long(4, ctx) * sqrt_rat(make_rat(2), ctx) *
                   pi_const(ctx).pow_rat(make_rat(3, 2)));
    REQUIRE((c_est - c_ref).abs().to_double() < 1e-8);
    HReal c41 = HReal::from_rat(
        rat_from_string("44846956652386177702450846743521442837728/"
                        "100000000000000000000000000000000000000000"),
        ctx);
    REQUIRE((c_ref - c41).abs().to_double() < 1e-40);
    REQUIRE((c_est - c41).abs().to_double() < 1e-8);
}

TEST_CASE("sine product limits cross-check the quotient engine") {
    PrecisionCtx ctx(220);
    std::vector<Rat> ss{make_rat(1, 2), make_rat(1, 3), make_rat(1, 4),
                        make_rat(1, 6)};
    for (const Rat& s : ss) {
        ClosedForm cf = theorem1_limit({s});
        HReal exact = eval_closed_form(cf, ctx);
        HReal direct = sin_pi_rat(s, ctx) / pi_const(ctx);
        REQUIRE((exact - direct).abs().to_double() < 1e-55);

        SCProblem p;
        p.seq = SeriesSeq::hyper(
            HGParams({make_rat(1, 2), s, Rat(1) - s}, {Rat(1), Rat(1)}));
        p.weight = WeightPoly{{QuadExt(0), QuadExt(1)}};
        AsymEstimate est = sc_limit(p, 6, 5000, 6);
        REQUIRE(est.target_reached);
        REQUIRE((est.value - exact).abs().to_double() < 1e-6);
    }
    REQUIRE_THROWS_AS(theorem1_limit({make_rat(3, 2)}), std::domain_error);
    REQUIRE_THROWS_AS(theorem1_limit({}), std::domain_error);

    ClosedForm two = theorem1_limit({make_rat(1, 2), make_rat(1, 2)});
    HReal v = eval_closed_form(two, ctx);
    HReal pi2 = pi_const(ctx) * pi_const(ctx);
    REQUIRE((v * pi2 - HReal::from_long(1, ctx)).abs().to_double() < 1e-55);
}

TEST_CASE("gamma product limits") {
    PrecisionCtx ctx(220);
    // smallest upper parameter 1/6, both explicit and implicit unit lowers
    ClosedForm g = theorem2_limit(
        HGParams({make_rat(1, 2), make_rat(1, 6), make_rat(5, 6)}, {Rat(1)}));
    HReal v = eval_closed_form(g, ctx);
    HReal ref = HReal::from_long(2, ctx) * pi_const(ctx).sqrt() /
                (sqrt_rat(make_rat(3), ctx) *
                 gamma_rat(make_rat(5, 6), ctx).pow_si(3));
    REQUIRE((v - ref).abs().to_double() < 1e-55);

    ClosedForm one = theorem2_limit(HGParams({Rat(1), make_rat(1, 2)}, {}));
    REQUIRE((eval_closed_form(one, ctx) - HReal::from_long(1, ctx))
                .abs()
                .to_double() < 1e-55);

    ClosedForm sh = theorem2_limit(
        HGParams({make_rat(1, 2), make_rat(7, 6), make_rat(5, 6)}, {Rat(1)}));
    HReal vs = eval_closed_form(sh, ctx);
    HReal ref2 =
        HReal::from_long(2, ctx) * sqrt_rat(make_rat(3), ctx) / pi_const(ctx);
    REQUIRE((vs - ref2).abs().to_double() < 1e-55);

    REQUIRE_THROWS_AS(
        theorem2_limit(HGParams({make_rat(1, 2), make_rat(1, 2)}, {Rat(1)})),
        std::domain_error);
}

TEST_CASE("budget exhaustion is flagged, not thrown") {
    SCProblem p;
    p.seq = SeriesSeq::named(SeqKind::kQuartic);
    p.r = QuadExt(make_rat(1, 16));
    p.weight = WeightPoly{{QuadExt(0), QuadExt(1)}};
    AsymEstimate est = sc_limit(p, 40, 256, 6);
    REQUIRE(!est.target_reached);
    REQUIRE(est.stability_digits < 40);
}

TEST_CASE("cooperative cancellation") {
    SCProblem p;
    p.seq = SeriesSeq::named(SeqKind::kQuartic);
    p.r = QuadExt(make_rat(1, 16));
    std::atomic<bool> stop{true};
    PrecisionCtx ctx(128);
    REQUIRE_THROWS_AS(sc_quotients(p, 2000, ctx, &stop), std::runtime_error);
}