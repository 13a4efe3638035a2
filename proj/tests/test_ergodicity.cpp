#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "padyn/ergodicity.hpp"
#include "padyn/instances.hpp"
#include "padyn/padic.hpp"
#include "padyn/region.hpp"
#include "padyn/sampling.hpp"

using namespace padyn;

namespace {

SphereInstance sphere_inst(long p, long b, long m, int precision = 64) {
    PrimeContext ctx = make_context(p, precision);
    return SphereInstance(ctx, make_padic(b, 1, ctx), m);
}

}  // namespace

TEST_CASE("sphere instances validate their hypotheses") {
    PrimeContext c2 = make_context(2, 40);
    CHECK_THROWS_AS(SphereInstance(c2, make_padic(2, 1, c2), 1), InvalidArgument);

    PrimeContext c5 = make_context(5, 40);
    CHECK_THROWS_AS(SphereInstance(c5, make_padic(2, 1, c5), 1), InvalidArgument);  // v(b) = 0
    CHECK_THROWS_AS(SphereInstance(c5, make_padic(5, 1, c5), 0), InvalidArgument);  // m = 0
    CHECK_THROWS_AS(SphereInstance(c5, make_padic(0, 1, c5), 1), DegenerateParams);

    SphereInstance inst = sphere_inst(5, 5, 1);
    CHECK(inst.vb() == 1);
    CHECK(inst.m() == 1);
    CHECK(inst.r0_exponent() == 2);
    CHECK(inst.x2().value() == mpq_class(-1, 4));
    CHECK(inst.pole().value() == mpq_class(-1, 5));
    CHECK(sphere_inst(3, 9, 1).r0_exponent() == 3);
}

TEST_CASE("sphere sampling is on-sphere and seed-deterministic") {
    SphereInstance inst = sphere_inst(5, 5, 1);
    UltrametricRegion s = inst.sphere_region();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        PadicRational y = inst.sample_point(seed);
        CHECK(region_membership(s, y));
        CHECK(y == inst.sample_point(seed));
    }
    CHECK(inst.sample_point(1) != inst.sample_point(2));
}

TEST_CASE("one step moves by exactly the sphere radius") {
    for (long b : {5L, 25L}) {
        SphereInstance inst = sphere_inst(5, b, 1);
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            StepDisplacement sd = step_displacement_check(inst, inst.sample_point(seed));
            CHECK(sd.equals_m);
            CHECK(sd.valuation == inst.m());
        }
    }
    SphereInstance inst3 = sphere_inst(3, 3, 2);
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        CHECK(step_displacement_check(inst3, inst3.sample_point(seed)).valuation == 2);

    PadicRational off = inst3.x2() + make_padic(1, 1, inst3.context());
    CHECK_THROWS_AS(step_displacement_check(inst3, off), InvalidArgument);
}

TEST_CASE("two-step identity residual is exactly zero") {
    for (auto [p, b] : {std::pair<long, long>{5, 5}, {3, 3}, {3, 9}, {7, 7}}) {
        SphereInstance inst = sphere_inst(p, b, 1);
        for (std::uint64_t seed = 1; seed <= 15; ++seed)
            CHECK(two_step_identity_check(inst, inst.sample_point(seed)).is_zero());
    }
}

TEST_CASE("two-step return distances, pinned") {
    // v(f(f(y)) - y) depends on b through (3-b)/(1-b)^2; the r0 bound holds
    // only when that factor's valuation reaches v(b).
    SphereInstance i55 = sphere_inst(5, 5, 1);
    PadicRational y55 = i55.x2() + make_padic(5, 1, i55.context());
    ReturnDisplacement r55 = return_displacement_check(i55, y55);
    CHECK(r55.valuation == 1);
    CHECK_FALSE(r55.satisfies_leq);

    SphereInstance i33 = sphere_inst(3, 3, 1);
    PadicRational y33 = i33.x2() + make_padic(3, 1, i33.context());
    ReturnDisplacement r33 = return_displacement_check(i33, y33);
    CHECK(r33.valuation == 3);
    CHECK(r33.satisfies_leq);
    CHECK(r33.strict);

    SphereInstance i39 = sphere_inst(3, 9, 1);
    PadicRational y39 = i39.x2() + make_padic(3, 1, i39.context());
    ReturnDisplacement r39 = return_displacement_check(i39, y39);
    CHECK(r39.valuation == 2);
    CHECK_FALSE(r39.satisfies_leq);
}

TEST_CASE("residue models induce permutations with pinned cycle structure") {
    CHECK(ResidueModel(sphere_inst(5, 5, 1), 2).cycle_lengths() == std::vector<long>{4});
    CHECK(ResidueModel(sphere_inst(5, 5, 1), 3).cycle_lengths() == std::vector<long>{20});
    CHECK(ResidueModel(sphere_inst(5, 5, 1), 4).cycle_lengths() == std::vector<long>{100});
    CHECK(ResidueModel(sphere_inst(3, 3, 1), 3).cycle_lengths() ==
          std::vector<long>{2, 2, 2});
    CHECK(ResidueModel(sphere_inst(3, 12, 1), 4).cycle_lengths() == std::vector<long>(9, 2));
    CHECK(ResidueModel(sphere_inst(7, 7, 1), 2).cycle_lengths() == std::vector<long>{3, 3});

    CHECK_THROWS_AS(ResidueModel(sphere_inst(5, 5, 1), 1), InvalidArgument);  // k < m + 1
}

TEST_CASE("residue transition commutes with the exact map") {
    SphereInstance inst = sphere_inst(5, 5, 1);
    ResidueModel model(inst, 4);
    CHECK(model.residues().size() == 100);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        PadicRational y = inst.sample_point(seed);
        CHECK(model.residue_of(apply(inst.map(), y)) == model.transition(model.residue_of(y)));
    }
}

TEST_CASE("sub-sphere balls map onto equal-radius balls") {
    SphereInstance inst = sphere_inst(5, 5, 1);
    PadicRational y = inst.sample_point(3);
    CHECK(ball_image_check(inst, closed_ball(y, 2), 4));
    CHECK(ball_image_check(inst, open_ball(y, 2), 5));
    CHECK(ball_image_check(inst, closed_ball(y, 3), 5));

    CHECK_THROWS_AS(ball_image_check(inst, closed_ball(y, 1), 4), InvalidArgument);
    CHECK_THROWS_AS(ball_image_check(inst, closed_ball(y, 2), 3), InvalidArgument);
}

TEST_CASE("invariant-set candidates and their measures") {
    SphereInstance i55 = sphere_inst(5, 5, 1);
    PadicRational y = i55.sample_point(1);

    InvariantSetCandidate closed = build_invariant_set(i55, y, BallVariant::ClosedBalls);
    CHECK(closed.set_measure == mpq_class(2, 25));
    CHECK(closed.sphere_measure == mpq_class(4, 25));
    CHECK_FALSE(closed.saturates_sphere());

    InvariantSetCandidate open = build_invariant_set(i55, y, BallVariant::OpenBalls);
    CHECK(open.set_measure == mpq_class(2, 125));
    CHECK(region_membership(open.ball1, y));
    CHECK(region_membership(open.ball2, open.fy));
    CHECK_FALSE(region_membership(open.ball2, y));

    SphereInstance i33 = sphere_inst(3, 3, 1);
    PadicRational z = i33.sample_point(1);
    InvariantSetCandidate sat = build_invariant_set(i33, z, BallVariant::ClosedBalls);
    CHECK(sat.set_measure == mpq_class(2, 9));
    CHECK(sat.sphere_measure == mpq_class(2, 9));
    CHECK(sat.saturates_sphere());  // two closed balls tile the whole sphere

    InvariantSetCandidate thin = build_invariant_set(i33, z, BallVariant::OpenBalls);
    CHECK(thin.set_measure / thin.sphere_measure == mpq_class(1, 3));
}

TEST_CASE("forward-closure sweeps at fixed resolution") {
    SphereInstance i55 = sphere_inst(5, 5, 1);
    PadicRational y = i55.sample_point(1);
    InvariantSetCandidate closed = build_invariant_set(i55, y, BallVariant::ClosedBalls);
    InvarianceSweep sweep = invariance_check(i55, closed, 4);
    CHECK(sweep.checked == 50);
    CHECK_FALSE(sweep.forward_closed);
    CHECK(sweep.violations.size() == 25);  // the second ball escapes wholesale

    SphereInstance i33 = sphere_inst(3, 3, 1);
    PadicRational z = i33.sample_point(1);
    InvariantSetCandidate open = build_invariant_set(i33, z, BallVariant::OpenBalls);
    InvarianceSweep ok = invariance_check(i33, open, 5);
    CHECK(ok.forward_closed);
    CHECK(ok.violations.empty());
    CHECK(ok.checked == 18);

    CHECK_THROWS_AS(invariance_check(i55, closed, 3), InvalidArgument);  // k < r0 + 2
}

TEST_CASE("full pipeline verdicts") {
    SphereInstance i33 = sphere_inst(3, 3, 1);
    ErgodicityReport won = ergodicity_verdict(i33, {1, 2, 3}, 5);
    CHECK(won.verdict == ErgodicityVerdict::NonErgodicWitnessFound);
    REQUIRE(won.witness.has_value());
    CHECK(won.witness->variant == BallVariant::OpenBalls);
    CHECK(won.witness->set_measure / won.witness->sphere_measure == mpq_class(1, 3));
    CHECK(won.cycle_lengths == std::vector<long>{18, 18, 18});
    CHECK(won.return_satisfied == 3);  // v(b) = 1 with b = 3 mod 9: bound met
    CHECK(won.step_displacements == std::vector<long>{1, 1, 1});

    SphereInstance i55 = sphere_inst(5, 5, 1);
    ErgodicityReport none = ergodicity_verdict(i55, {1, 2}, 4);
    CHECK(none.verdict == ErgodicityVerdict::NoWitnessAtThisResolution);
    CHECK_FALSE(none.witness.has_value());
    CHECK(none.cycle_lengths == std::vector<long>{100});
    CHECK(none.return_satisfied == 0);
    for (const auto& cand : none.candidates) CHECK_FALSE(cand.witness);

    CHECK(verdict_str(ErgodicityVerdict::NonErgodicWitnessFound) == "NonErgodicWitnessFound");
    CHECK(verdict_str(ErgodicityVerdict::NoWitnessAtThisResolution) ==
          "NoWitnessAtThisResolution");
}

TEST_CASE("scaling conjugation collapses a to 1") {
    Rng rng(77);
    for (long p : {3L, 5L, 7L}) {
        PrimeContext ctx = make_context(p, 64);
        int done = 0;
        while (done < 100) {
            PadicRational a = sample_rational(rng, ctx, false);
            PadicRational b = sample_rational(rng, ctx, false);
            PadicRational x = sample_rational(rng, ctx);
            if (a.is_zero() || b.is_zero()) continue;
            if ((b * x + a).is_zero()) continue;
            CHECK(conjugation_check(a, b, x).is_zero());
            ++done;
        }
    }
    PrimeContext c5 = make_context(5, 40);
    CHECK_THROWS_AS(conjugation_check(make_padic(2, 1, c5), make_padic(3, 1, c5),
                                      make_padic(-2, 3, c5)),
                    PoleHit);
}
