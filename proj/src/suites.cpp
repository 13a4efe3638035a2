#include "padyn/suites.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

#include "padyn/dynamics.hpp"
#include "padyn/ergodicity.hpp"
#include "padyn/instances.hpp"
#include "padyn/sampling.hpp"

namespace padyn {
namespace {

constexpr std::uint64_t kMix = 0x9e3779b97f4a7c15ULL;

MapParams random_map(Rng& rng, PrimeContext ctx) {
    while (true) {
        PadicRational a = sample_scaled_unit(rng, ctx, -3, 3, true);
        PadicRational b = sample_scaled_unit(rng, ctx, -3, 3, true);
        if (a == b) continue;
        return MapParams(a, b);
    }
}

PadicRational random_offpole(Rng& rng, const MapParams& m) {
    while (true) {
        PadicRational x = sample_rational(rng, m.context());
        if (x != m.pole()) return x;
    }
}

std::string count_str(long ok, long total) {
    return std::to_string(ok) + "/" + std::to_string(total) + " ok";
}

void push(CriterionResult& c, std::string name, bool pass, std::string detail) {
    c.checks.push_back({std::move(name), pass, std::move(detail)});
}

const DemoInstance& demo(const std::string& name) {
    for (const DemoInstance& d : demo_instances())
        if (d.name == name) return d;
    throw InvalidArgument("unknown instance: " + name);
}

std::string join(const std::vector<long>& xs) {
    std::string out;
    for (long x : xs) {
        if (!out.empty()) out += ",";
        out += std::to_string(x);
    }
    return out;
}

CriterionResult c1(std::uint64_t seed) {
    CriterionResult c{1, criterion_names()[0], {}};
    for (long p : {2L, 3L, 5L, 7L, 11L}) {
        PrimeContext ctx = make_context(p, 16);
        Rng rng(seed ^ (kMix * static_cast<std::uint64_t>(p)));
        const int trials = 10000;
        long bad = 0, split_cases = 0;
        for (int i = 0; i < trials; ++i) {
            PadicRational x = sample_rational(rng, ctx);
            PadicRational y = sample_rational(rng, ctx);
            PadicRational z = sample_rational(rng, ctx);
            if (!((x * y).valuation() == x.valuation() + y.valuation())) ++bad;
            if (!((x * y * z).valuation() == x.valuation() + y.valuation() + z.valuation()))
                ++bad;
            ExtValuation lo = min(x.valuation(), y.valuation());
            if ((x + y).valuation() < lo) ++bad;
            if (!(x.valuation() == y.valuation())) {
                ++split_cases;
                if (!((x - y).valuation() == lo)) ++bad;
            }
        }
        push(c, "axioms-p" + std::to_string(p), bad == 0,
             std::to_string(trials) + " draws, " + std::to_string(split_cases) +
                 " unequal-norm cases, " + std::to_string(bad) + " failures");
    }
    return c;
}

CriterionResult c2(std::uint64_t seed) {
    CriterionResult c{2, criterion_names()[1], {}};
    for (long p : {2L, 3L, 5L, 7L, 11L}) {
        PrimeContext ctx = make_context(p, 16);
        Rng rng(seed ^ (kMix * static_cast<std::uint64_t>(100 + p)));
        const int trials = 1000;
        long bad = 0;
        for (int i = 0; i < trials; ++i) {
            MapParams m = random_map(rng, ctx);
            PadicRational x = random_offpole(rng, m);
            if (!delta_identities(m, x).all_zero()) ++bad;
        }
        push(c, "residuals-p" + std::to_string(p), bad == 0,
             std::to_string(trials) + " triples, " + std::to_string(bad) + " nonzero residuals");
    }
    return c;
}

CriterionResult c3(std::uint64_t seed) {
    CriterionResult c{3, criterion_names()[2], {}};
    long bad_fix = 0, bad_mult = 0, bad_deriv = 0, derivs = 0;
    for (long p : {2L, 3L, 5L, 7L}) {
        PrimeContext ctx = make_context(p, 16);
        Rng rng(seed ^ (kMix * static_cast<std::uint64_t>(200 + p)));
        for (int i = 0; i < 25; ++i) {
            MapParams m = random_map(rng, ctx);
            if (apply(m, m.x1()) != m.x1() || apply(m, m.x2()) != m.x2()) ++bad_fix;
            PadicRational lam = multiplier(m, FixedPoint::X2);
            if (lam != (m.a() + m.a() - m.b()) / m.a() || lam != derivative_at(m, m.x2()) ||
                !multiplier(m, FixedPoint::X1).is_zero() || !derivative_at(m, m.x1()).is_zero())
                ++bad_mult;
            for (int n = 2; n <= 8; ++n) {
                derivs += 2;
                if (nth_derivative_at_fixed_point(m, n, FixedPoint::X1) !=
                    nth_derivative_at(m, n, m.x1()))
                    ++bad_deriv;
                if (nth_derivative_at_fixed_point(m, n, FixedPoint::X2) !=
                    nth_derivative_at(m, n, m.x2()))
                    ++bad_deriv;
            }
        }
    }
    push(c, "fixed-points", bad_fix == 0,
         "100 parameter sets, " + std::to_string(bad_fix) + " failures");
    push(c, "multipliers", bad_mult == 0,
         "100 parameter sets, " + std::to_string(bad_mult) + " failures");
    push(c, "derivatives-n2-8", bad_deriv == 0,
         std::to_string(derivs) + " comparisons, " + std::to_string(bad_deriv) + " mismatches");
    return c;
}

CriterionResult c4(std::uint64_t seed) {
    CriterionResult c{4, criterion_names()[3], {}};
    for (long p : {2L, 3L, 5L, 7L}) {
        PrimeContext ctx = make_context(p, 16);
        Rng rng(seed ^ (kMix * static_cast<std::uint64_t>(300 + p)));
        const int trials = 1000;
        long bad = 0;
        for (int i = 0; i < trials; ++i) {
            MapParams m = random_map(rng, ctx);
            StabilityClass from_tag = stability_of(classify(m));
            PadicRational lam = multiplier(m, FixedPoint::X2);
            StabilityClass from_norm;
            if (lam.is_zero()) {
                from_norm = StabilityClass::Attracting;
            } else {
                long v = lam.valuation().value();
                from_norm = v > 0   ? StabilityClass::Attracting
                            : v == 0 ? StabilityClass::Indifferent
                                     : StabilityClass::Repelling;
            }
            if (from_tag != from_norm) ++bad;
        }
        push(c, "trichotomy-p" + std::to_string(p), bad == 0,
             std::to_string(trials) + " parameter sets, " + std::to_string(bad) +
                 " disagreements");
    }
    return c;
}

CriterionResult c5(std::uint64_t seed) {
    CriterionResult c{5, criterion_names()[4], {}};
    MapParams m = make_map(demo("siegel-p3"));
    for (long s = 1; s <= 5; ++s) {
        long exits = siegel_invariance_test(m, s, 100, 100, seed + static_cast<std::uint64_t>(s));
        push(c, "sphere-m" + std::to_string(s), exits == 0,
             "100 samples x 100 iterations, " + std::to_string(exits) + " sphere exits");
    }
    Rng rng(seed ^ (kMix * 5));
    long ok = 0;
    for (int i = 0; i < 100; ++i) {
        PadicRational x = sample_scaled_unit(rng, m.context(), 1, 6, true);
        if (basin_test(m, x, 200, 30).outcome == BasinOutcome::ConvergedX1) ++ok;
    }
    push(c, "basin-x1", ok == 100,
         count_str(ok, 100) + ", valuation target 30 within 200 steps");
    return c;
}

CriterionResult c6(std::uint64_t seed) {
    CriterionResult c{6, criterion_names()[5], {}};
    MapParams m = make_map(demo("repelling-p5"));
    Rng rng(seed ^ (kMix * 6));
    long ok = 0;
    for (int i = 0; i < 100; ++i) {
        PadicRational x = sample_scaled_unit(rng, m.context(), -6, -1, true);
        if (apply(m, x).valuation() == x.valuation().value() + 1) ++ok;
    }
    push(c, "scaling-law", ok == 100,
         count_str(ok, 100) + ", valuation steps by +1 outside the unit ball");
    long conv = 0;
    for (int i = 0; i < 100; ++i) {
        PadicRational x = sample_scaled_unit(rng, m.context(), 1, 6, true);
        if (basin_test(m, x, 300, 30).outcome == BasinOutcome::ConvergedX1) ++conv;
    }
    push(c, "attractor-x1", conv == 100,
         count_str(conv, 100) + " converge inside the guaranteed ball, target 30 within 300");
    return c;
}

CriterionResult c7(std::uint64_t seed) {
    CriterionResult c{7, criterion_names()[6], {}};
    for (const char* name : {"attracting-deep-p2", "attracting-edge-p3"}) {
        MapParams m = make_map(demo(name));
        RegionReport rep = region_report(m);
        Rng rng(seed ^ (kMix * static_cast<std::uint64_t>(m.context().p)));
        long ok1 = 0, ok2 = 0;
        long e1 = rep.attractor_x1.radius_exponent;
        long e2 = rep.region_x2->radius_exponent;
        for (int i = 0; i < 100; ++i) {
            PadicRational d1 = sample_scaled_unit(rng, m.context(), static_cast<int>(e1) + 1,
                                                  static_cast<int>(e1) + 6, true);
            if (basin_test(m, m.x1() + d1, 300, 30).outcome == BasinOutcome::ConvergedX1) ++ok1;
            PadicRational d2 = sample_scaled_unit(rng, m.context(), static_cast<int>(e2) + 1,
                                                  static_cast<int>(e2) + 6, true);
            if (basin_test(m, m.x2() + d2, 300, 30).outcome == BasinOutcome::ConvergedX2) ++ok2;
        }
        push(c, std::string(name) + "-x1", ok1 == 100,
             count_str(ok1, 100) + " in the x1 ball (exp " + std::to_string(e1) + ")");
        push(c, std::string(name) + "-x2", ok2 == 100,
             count_str(ok2, 100) + " in the x2 ball (exp " + std::to_string(e2) + ")");
    }
    return c;
}

CriterionResult c8(std::uint64_t) {
    CriterionResult c{8, criterion_names()[7], {}};
    auto check_map = [&c](const std::string& name, const MapParams& m) {
        bool pass = true;
        long s1 = guaranteed_radius(m, RadiusGoal::AttractorX1);
        long b1 = guaranteed_radius_brute(m, RadiusGoal::AttractorX1);
        pass = pass && s1 == b1;
        std::string detail = "x1 " + std::to_string(s1) + "|" + std::to_string(b1);
        StabilityClass s = stability_of(classify(m));
        if (s == StabilityClass::Indifferent) {
            long s2 = guaranteed_radius(m, RadiusGoal::SiegelX2);
            long b2 = guaranteed_radius_brute(m, RadiusGoal::SiegelX2);
            pass = pass && s2 == b2;
            detail += ", siegel-x2 " + std::to_string(s2) + "|" + std::to_string(b2);
        } else if (s == StabilityClass::Attracting) {
            long s2 = guaranteed_radius(m, RadiusGoal::AttractorX2);
            long b2 = guaranteed_radius_brute(m, RadiusGoal::AttractorX2);
            pass = pass && s2 == b2;
            detail += ", attractor-x2 " + std::to_string(s2) + "|" + std::to_string(b2);
        }
        push(c, name, pass, detail + " (symbolic|brute)");
    };
    for (const DemoInstance& d : demo_instances()) check_map(d.name, make_map(d));
    for (const SphereDemo& d : sphere_demos()) check_map(d.name, make_sphere_instance(d).map());
    return c;
}

CriterionResult c9(std::uint64_t seed) {
    CriterionResult c{9, criterion_names()[8], {}};
    long bad_id = 0;
    for (long p : {3L, 5L, 7L, 11L}) {
        PrimeContext ctx = make_context(p, 16);
        Rng rng(seed ^ (kMix * static_cast<std::uint64_t>(900 + p)));
        for (int i = 0; i < 25; ++i)
            if (!period2_identity_holds(random_map(rng, ctx))) ++bad_id;
    }
    push(c, "cubic-identity", bad_id == 0,
         "100 parameter sets, " + std::to_string(bad_id) + " coefficient mismatches");

    {
        PrimeContext ctx = make_context(3, 64);
        MapParams m(make_padic(1, 1, ctx), make_padic(21, 4, ctx));
        std::vector<PadicRational> pts = period2_points(m);
        bool pass = pts.size() == 2;
        std::string lst;
        for (const PadicRational& r : pts) {
            pass = pass && apply(m, apply(m, r)) == r && apply(m, r) != r;
            if (!lst.empty()) lst += ", ";
            lst += r.str();
        }
        push(c, "exact-cycle", pass, "a=1, b=21/4: roots {" + lst + "} swap under the map");
    }

    long with_roots = 0, bad = 0, total = 0;
    for (long p : {3L, 5L, 7L}) {
        PrimeContext ctx = make_context(p, 64);
        Rng rng(seed ^ (kMix * static_cast<std::uint64_t>(950 + p)));
        for (int i = 0; i < 20; ++i) {
            MapParams m = random_map(rng, ctx);
            PadicRational three_a = m.a() + m.a() + m.a();
            if ((m.a() + m.b()).is_zero() || m.b() == three_a) continue;
            ++total;
            std::vector<PadicRational> pts;
            try {
                pts = period2_points(m);
            } catch (const Error&) {
                ++bad;
                continue;
            }
            if (pts.empty()) continue;
            ++with_roots;
            for (const PadicRational& r : pts) {
                PadicRational d = apply(m, apply(m, r)) - r;
                if (!(d.is_zero() || d.valuation() >= ctx.precision - 4)) ++bad;
                if (apply(m, r) == r) ++bad;
            }
        }
    }
    push(c, "hensel-roots", bad == 0,
         std::to_string(total) + " draws, " + std::to_string(with_roots) +
             " with 2-cycles in the field, " + std::to_string(bad) + " failures");
    return c;
}

CriterionResult c10(std::uint64_t seed) {
    CriterionResult c{10, criterion_names()[9], {}};
    for (auto [name, p, bnum] :
         {std::tuple<const char*, long, long>{"p5-b5", 5, 5},
          std::tuple<const char*, long, long>{"p3-b9", 3, 9}}) {
        PrimeContext ctx = make_context(p, 64);
        SphereInstance inst(ctx, make_padic(bnum, 1, ctx), 1);

        long bad_step = 0;
        for (int i = 0; i < 500; ++i) {
            PadicRational y = inst.sample_point(seed + static_cast<std::uint64_t>(i));
            if (!step_displacement_check(inst, y).equals_m) ++bad_step;
        }
        push(c, std::string("step-displacement-") + name, bad_step == 0,
             "500 samples, " + std::to_string(bad_step) + " off the sphere exponent");

        long bad_id = 0;
        Rng rng(seed ^ (kMix * static_cast<std::uint64_t>(1000 + p)));
        for (int i = 0; i < 1000; ++i) {
            PadicRational x = inst.x2() + sample_scaled_unit(rng, ctx, 1, 8, true);
            if (!two_step_identity_check(inst, x).is_zero()) ++bad_id;
        }
        push(c, std::string("two-step-identity-") + name, bad_id == 0,
             "1000 points, " + std::to_string(bad_id) + " nonzero residuals");

        long sat = 0, strict = 0, minv = 0, maxv = 0;
        for (int i = 0; i < 500; ++i) {
            PadicRational y = inst.sample_point(seed + 7000 + static_cast<std::uint64_t>(i));
            ReturnDisplacement rd = return_displacement_check(inst, y);
            long v = rd.valuation.value();
            if (i == 0) minv = maxv = v;
            minv = std::min(minv, v);
            maxv = std::max(maxv, v);
            if (rd.satisfies_leq) ++sat;
            if (rd.strict) ++strict;
        }
        push(c, std::string("return-bound-") + name, sat == 500,
             "bound " + std::to_string(inst.r0_exponent()) + ", observed valuation in [" +
                 std::to_string(minv) + "," + std::to_string(maxv) + "]: " +
                 std::to_string(sat) + "/500 satisfied, " + std::to_string(strict) + " strict");
    }
    return c;
}

CriterionResult c11(std::uint64_t seed) {
    CriterionResult c{11, criterion_names()[10], {}};
    PrimeContext ctx = make_context(5, 64);
    SphereInstance inst(ctx, make_padic(5, 1, ctx), 1);
    PadicRational y = inst.sample_point(seed);
    InvariantSetCandidate A = build_invariant_set(inst, y, BallVariant::ClosedBalls);

    mpq_class expect_set(2, 25), expect_sphere(4, 25), expect_ratio(1, 2);
    expect_set.canonicalize();
    expect_sphere.canonicalize();
    expect_ratio.canonicalize();
    mpq_class ratio = A.set_measure / A.sphere_measure;
    push(c, "measure-set", A.set_measure == expect_set, "mu(A) = " + rational_str(A.set_measure));
    push(c, "measure-sphere", A.sphere_measure == expect_sphere,
         "mu(S) = " + rational_str(A.sphere_measure));
    push(c, "measure-ratio", ratio == expect_ratio && ratio > 0 && ratio < 1,
         "mu(A)/mu(S) = " + rational_str(ratio) + ", strictly inside (0,1)");

    InvarianceSweep sweep = invariance_check(inst, A, 4);
    push(c, "forward-closure", sweep.forward_closed,
         std::to_string(sweep.checked) + " residues in A, " +
             std::to_string(sweep.violations.size()) + " escape");

    ErgodicityReport rep = ergodicity_verdict(inst, {seed}, 4);
    push(c, "verdict", rep.verdict == ErgodicityVerdict::NonErgodicWitnessFound,
         verdict_str(rep.verdict) + "; ball cycle lengths [" + join(rep.cycle_lengths) + "]");
    return c;
}

CriterionResult c12(std::uint64_t seed) {
    CriterionResult c{12, criterion_names()[11], {}};
    for (long p : {3L, 5L, 7L}) {
        PrimeContext ctx = make_context(p, 16);
        Rng rng(seed ^ (kMix * static_cast<std::uint64_t>(1200 + p)));
        const int trials = 1000;
        long bad = 0;
        for (int i = 0; i < trials; ++i) {
            PadicRational a = sample_scaled_unit(rng, ctx, -3, 3, true);
            PadicRational b = sample_scaled_unit(rng, ctx, -3, 3, true);
            PadicRational x = sample_rational(rng, ctx);
            while ((b * x + a).is_zero()) x = sample_rational(rng, ctx);
            if (!conjugation_check(a, b, x).is_zero()) ++bad;
        }
        push(c, "residuals-p" + std::to_string(p), bad == 0,
             std::to_string(trials) + " draws, " + std::to_string(bad) + " nonzero residuals");
    }
    return c;
}

}  // namespace

bool CriterionResult::pass() const {
    if (checks.empty()) return false;
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& ck) { return ck.pass; });
}

std::string CriterionResult::summary_line() const {
    char num[8];
    std::snprintf(num, sizeof num, "%02d", number);
    std::string line = pass() ? "[PASS] " : "[FAIL] ";
    line += num;
    line += " ";
    line += name;
    line += " (" + std::to_string(checks.size()) + " checks";
    if (!pass()) {
        line += ", failing:";
        for (const CheckResult& ck : checks)
            if (!ck.pass) line += " " + ck.name;
    }
    line += ")";
    return line;
}

CriterionResult run_criterion(int number, std::uint64_t seed) {
    switch (number) {
        case 1: return c1(seed);
        case 2: return c2(seed);
        case 3: return c3(seed);
        case 4: return c4(seed);
        case 5: return c5(seed);
        case 6: return c6(seed);
        case 7: return c7(seed);
        case 8: return c8(seed);
        case 9: return c9(seed);
        case 10: return c10(seed);
        case 11: return c11(seed);
        case 12: return c12(seed);
        default: throw InvalidArgument("criterion number must be 1..12");
    }
}

const std::vector<std::string>& criterion_names() {
    static const std::vector<std::string> names = {
        "norm-axioms",
        "delta-identities",
        "fixed-points-and-multipliers",
        "classification-consistency",
        "siegel-and-basin-p3",
        "scaling-law-p5",
        "attractor-convergence",
        "radius-crosscheck",
        "period-two-factorization",
        "sphere-displacement-laws",
        "invariant-set-witness",
        "conjugation-invariance",
    };
    return names;
}

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "identities") return {1, 2, 3, 9, 12};
    if (suite == "classification") return {4, 8};
    if (suite == "siegel") return {5};
    if (suite == "basins") return {6, 7};
    if (suite == "ergodicity") return {10, 11};
    if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
    return {};
}

std::vector<CheckResult> ergodicity_checks_for(long p, const std::string& b, long m, long k,
                                               std::uint64_t seed, int samples) {
    PrimeContext ctx = make_context(p, 64);
    SphereInstance inst(ctx, make_padic(b, ctx), m);
    if (k <= 0) k = inst.r0_exponent() + 3;
    std::vector<std::uint64_t> seeds;
    seeds.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) seeds.push_back(seed + static_cast<std::uint64_t>(i));
    ErgodicityReport rep = ergodicity_verdict(inst, seeds, k);

    std::vector<CheckResult> checks;
    long off = 0;
    for (long v : rep.step_displacements)
        if (v != rep.m) ++off;
    checks.push_back({"step-displacement", off == 0,
                      std::to_string(samples) + " samples, " + std::to_string(off) +
                          " off the sphere exponent " + std::to_string(rep.m)});
    checks.push_back({"return-bound", rep.return_satisfied == samples,
                      "bound " + std::to_string(rep.return_bound) + ": " +
                          std::to_string(rep.return_satisfied) + "/" + std::to_string(samples) +
                          " satisfied, " + std::to_string(rep.return_strict) + " strict"});
    std::string wd = verdict_str(rep.verdict) + "; ball cycle lengths [" +
                     join(rep.cycle_lengths) + "] at k=" + std::to_string(k);
    if (rep.witness) {
        mpq_class ratio = rep.witness->set_measure / rep.witness->sphere_measure;
        wd += "; A = " + region_str(rep.witness->ball1) + " u " +
              region_str(rep.witness->ball2) + ", mu(A)/mu(S) = " + rational_str(ratio);
    }
    checks.push_back(
        {"witness", rep.verdict == ErgodicityVerdict::NonErgodicWitnessFound, wd});
    return checks;
}

void criterion_records(const CriterionResult& c, ReportWriter& w, const std::string& suite) {
    for (const CheckResult& ck : c.checks) {
        Record r;
        r["suite"] = suite;
        r["criterion"] = c.number;
        r["check"] = c.name + "/" + ck.name;
        r["instance"] = "builtin";
        r["pass"] = ck.pass;
        r["detail"] = ck.detail;
        w.add(r);
    }
}

}  // namespace padyn
