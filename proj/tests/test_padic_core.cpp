#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "padyn/padic.hpp"
#include "padyn/region.hpp"
#include "padyn/roots.hpp"
#include "padyn/sampling.hpp"

using namespace padyn;

TEST_CASE("extended valuation ordering and arithmetic") {
    ExtValuation two = ExtValuation::finite(2);
    ExtValuation neg = ExtValuation::finite(-3);
    ExtValuation inf = ExtValuation::infinity();
    CHECK(two > neg);
    CHECK(inf > two);
    CHECK(min(two, inf) == two);
    CHECK((two + neg) == ExtValuation::finite(-1));
    CHECK((two + inf).is_infinity());
    CHECK(inf.str() == "inf");
    CHECK(neg.str() == "-3");
    CHECK(two >= 2);
    CHECK_FALSE(two > 2);
}

TEST_CASE("context validates the prime") {
    CHECK_THROWS_AS(make_context(4), InvalidArgument);
    CHECK_THROWS_AS(make_context(1), InvalidArgument);
    CHECK_THROWS_AS(make_context(561), InvalidArgument);  // Carmichael
    CHECK_THROWS_AS(make_context(5, 0), InvalidArgument);
    CHECK(is_prime_u64((1ULL << 61) - 1));
    CHECK_FALSE(is_prime_u64((1ULL << 61) - 3));
    CHECK(make_context(5).p == 5);
}

TEST_CASE("valuations of exact rationals") {
    PrimeContext c5 = make_context(5);
    CHECK(make_padic(50, 1, c5).valuation() == 2);
    CHECK(make_padic(1, 25, c5).valuation() == -2);
    CHECK(make_padic(0, 1, c5).valuation().is_infinity());
    PrimeContext c2 = make_context(2);
    CHECK(make_padic(3, 4, c2).valuation() == -2);
    CHECK(make_padic("21/4", make_context(3)).valuation() == 1);
    CHECK(make_padic(-45, 7, c5).valuation() == 1);
}

TEST_CASE("arithmetic stays exact and canonical") {
    PrimeContext c3 = make_context(3);
    PadicRational x = make_padic(2, 9, c3), y = make_padic(5, 3, c3);
    CHECK((x + y).value() == mpq_class(17, 9));
    CHECK((x * y).value() == mpq_class(10, 27));
    CHECK((x / y).value() == mpq_class(2, 15));
    CHECK((-x).value() == mpq_class(-2, 9));
    CHECK(x.str() == "2/9");
    CHECK_THROWS_AS(x / make_padic(0, 1, c3), DivisionByZero);
    PadicRational alien = make_padic(1, 1, make_context(5));
    CHECK_THROWS_AS((void)(x + alien), ContextMismatch);
}

TEST_CASE("unequal norms force the max in differences") {
    for (long p : {2L, 3L, 7L}) {
        PrimeContext ctx = make_context(p, 12);
        Rng rng(42);
        for (int i = 0; i < 2000; ++i) {
            PadicRational x = sample_rational(rng, ctx), y = sample_rational(rng, ctx);
            ExtValuation lo = min(x.valuation(), y.valuation());
            CHECK((x + y).valuation() >= lo);
            if (!(x.valuation() == y.valuation())) CHECK((x - y).valuation() == lo);
            CHECK((x * y).valuation() == x.valuation() + y.valuation());
        }
    }
}

TEST_CASE("canonical digits of 7/3 at p=5") {
    PrimeContext ctx = make_context(5, 6);
    CanonicalExpansion e = canonical_digits(make_padic(7, 3, ctx));
    CHECK(e.gamma == 0);
    CHECK(e.digits == std::vector<long>{4, 3, 1, 3, 1, 3});
}

TEST_CASE("digit expansion round-trips to the stated depth") {
    for (long p : {2L, 3L, 5L, 7L}) {
        PrimeContext ctx = make_context(p, 20);
        Rng rng(7 * p);
        for (int i = 0; i < 50; ++i) {
            PadicRational x = sample_rational(rng, ctx, false);
            CanonicalExpansion e = canonical_digits(x);
            CHECK(e.digits.size() == 20);
            CHECK(e.digits[0] != 0);
            PadicRational back = expansion_partial_sum(e, ctx);
            CHECK((x - back).valuation() >= e.gamma + 20);
        }
    }
    PrimeContext ctx = make_context(5, 8);
    CanonicalExpansion z = canonical_digits(make_padic(0, 1, ctx));
    CHECK(z.gamma == 0);
    CHECK(std::all_of(z.digits.begin(), z.digits.end(), [](long d) { return d == 0; }));
}

TEST_CASE("ball representatives agree to the guard depth") {
    PrimeContext ctx = make_context(7, 24);
    Rng rng(11);
    for (int i = 0; i < 50; ++i) {
        PadicRational x = sample_rational(rng, ctx, false);
        PadicRational r = x.ball_representative(24);
        CHECK((x - r).valuation() >= x.valuation().value() + 24);
        CHECK(r.valuation() == x.valuation());
    }
}

TEST_CASE("square roots: exact, lifted, and refused") {
    PrimeContext c7 = make_context(7, 40);
    auto s = sqrt_hensel(make_padic(9, 4, c7));
    REQUIRE(s.has_value());
    CHECK((s->value() == mpq_class(3, 2) || s->value() == mpq_class(-3, 2)));

    auto t = sqrt_hensel(make_padic(2, 1, c7));  // 2 = 3^2 mod 7, unit square
    REQUIRE(t.has_value());
    CHECK(t->value() * t->value() != 2);  // a lift, not an exact root
    CHECK(((*t) * (*t) - make_padic(2, 1, c7)).valuation() >= 40);

    CHECK_FALSE(sqrt_hensel(make_padic(3, 1, c7)).has_value());   // non-residue
    CHECK_FALSE(sqrt_hensel(make_padic(7, 1, c7)).has_value());   // odd valuation
    CHECK(sqrt_hensel(make_padic(0, 1, c7))->is_zero());
    CHECK(sqrt_hensel(make_padic(49, 1, c7))->value() == 7);

    PrimeContext c5 = make_context(5, 40);
    auto u = sqrt_hensel(make_padic(-1, 1, c5));  // -1 is a square in Q_5
    REQUIRE(u.has_value());
    CHECK(((*u) * (*u) + make_padic(1, 1, c5)).valuation() >= 40);

    CHECK_THROWS_AS(sqrt_hensel(make_padic(9, 1, make_context(2, 10))), UnsupportedPrime);
}

TEST_CASE("quadratics: rational roots come back exactly") {
    PrimeContext ctx = make_context(11, 30);
    auto roots = solve_quadratic(make_padic(1, 1, ctx), make_padic(-5, 1, ctx),
                                 make_padic(6, 1, ctx));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].value() + roots[1].value() == 5);
    CHECK(roots[0].value() * roots[1].value() == 6);

    // x^2 - 2 over Q_7: Hensel-lifted, residual below the guard depth.
    auto lifted = solve_quadratic(make_padic(1, 1, make_context(7, 30)),
                                  make_padic(0, 1, make_context(7, 30)),
                                  make_padic(-2, 1, make_context(7, 30)));
    REQUIRE(lifted.size() == 2);
    for (const PadicRational& r : lifted) CHECK((r * r - make_padic(2, 1, r.context())).valuation() >= 26);

    // no roots when the discriminant is not a square
    CHECK(solve_quadratic(make_padic(6, 1, make_context(5, 20)), make_padic(6, 1, make_context(5, 20)),
                          make_padic(1, 1, make_context(5, 20)))
              .empty());
    CHECK_THROWS_AS(solve_quadratic(make_padic(0, 1, ctx), make_padic(1, 1, ctx),
                                    make_padic(1, 1, ctx)),
                    DegenerateLeadingCoefficient);
}

TEST_CASE("region membership, equality, and Haar measure") {
    PrimeContext ctx = make_context(5, 12);
    PadicRational zero = make_padic(0, 1, ctx);
    UltrametricRegion cb = closed_ball(zero, 1);
    UltrametricRegion ob = open_ball(zero, 1);
    UltrametricRegion sp = sphere(zero, 1);

    PadicRational five = make_padic(5, 1, ctx), twenty5 = make_padic(25, 1, ctx);
    CHECK(region_membership(cb, five));
    CHECK(region_membership(cb, twenty5));
    CHECK_FALSE(region_membership(ob, five));
    CHECK(region_membership(ob, twenty5));
    CHECK(region_membership(sp, five));
    CHECK_FALSE(region_membership(sp, twenty5));
    CHECK_FALSE(region_membership(sp, zero));

    CHECK(region_equal(closed_ball(zero, 0), closed_ball(five, 0)));
    CHECK(region_equal(open_ball(zero, 0), open_ball(five, 0)));
    CHECK_FALSE(region_equal(closed_ball(zero, 0), closed_ball(make_padic(1, 5, ctx), 0)));
    CHECK(region_equal(sphere(make_padic(1, 1, ctx), 2),
                       sphere(make_padic(126, 1, ctx), 2)));  // centers differ by 5^3
    CHECK_FALSE(region_equal(sphere(make_padic(1, 1, ctx), 2),
                             sphere(make_padic(26, 1, ctx), 2)));

    CHECK(measure(cb) == mpq_class(1, 5));
    CHECK(measure(ob) == mpq_class(1, 25));
    CHECK(measure(sp) == mpq_class(4, 25));
    CHECK(measure(closed_ball(zero, -2)) == 25);
}

TEST_CASE("samplers are deterministic and land where promised") {
    PrimeContext ctx = make_context(7, 16);
    Rng a(123), b(123);
    for (int i = 0; i < 20; ++i) CHECK(a.u64() == b.u64());
    Rng r1(5), r2(5);
    CHECK(sample_rational(r1, ctx) == sample_rational(r2, ctx));

    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        mpz_class u = sample_unit(rng, 7, 16);
        CHECK(mpz_divisible_ui_p(u.get_mpz_t(), 7) == 0);
        CHECK(u > 0);
    }
    PadicRational c = make_padic(3, 4, ctx);
    UltrametricRegion s = sphere(c, 2);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        PadicRational x = sample_sphere(s, seed);
        CHECK((x - c).valuation() == 2);
    }
    CHECK(sample_sphere(s, 17) == sample_sphere(s, 17));
    Rng rs(3);
    for (int i = 0; i < 100; ++i) {
        PadicRational x = sample_scaled_unit(rs, ctx, -2, 4);
        long v = x.valuation().value();
        CHECK(v >= -2);
        CHECK(v <= 4);
    }
}
