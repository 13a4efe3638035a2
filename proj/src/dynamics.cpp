#include "padyn/dynamics.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <utility>

#include "padyn/roots.hpp"

namespace padyn {
namespace {

PadicRational pow_int(const PadicRational& x, long e) {
    PadicRational r = make_padic(1, 1, x.context());
    if (e < 0) {
        if (x.is_zero()) throw DivisionByZero();
        return pow_int(make_padic(1, 1, x.context()) / x, -e);
    }
    PadicRational base = x;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

PadicRational factorial(int n, PrimeContext ctx) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return PadicRational(mpq_class(f), ctx);
}

long val_of(const PadicRational& x) { return x.valuation().value(); }

}  // namespace

MapParams::MapParams(PadicRational a, PadicRational b) : a_(std::move(a)), b_(std::move(b)) {
    if (!(a_.context() == b_.context())) throw ContextMismatch();
    if (a_.is_zero() || b_.is_zero()) throw DegenerateParams("need a != 0 and b != 0");
    if (a_ == b_) throw DegenerateParams("need a != b (second fixed point)");
}

PadicRational MapParams::x1() const { return make_padic(0, 1, context()); }
PadicRational MapParams::x2() const { return make_padic(1, 1, context()) / (a_ - b_); }
PadicRational MapParams::pole() const { return -(make_padic(1, 1, context()) / b_); }

PadicRational apply(const MapParams& m, const PadicRational& x) {
    PadicRational den = m.b() * x + make_padic(1, 1, m.context());
    if (den.is_zero()) throw PoleHit(0);
    return m.a() * x * x / den;
}

PadicRational multiplier(const MapParams& m, FixedPoint which) {
    if (which == FixedPoint::X1) return make_padic(0, 1, m.context());
    PadicRational two = make_padic(2, 1, m.context());
    return (two * m.a() - m.b()) / m.a();
}

PadicRational derivative_at(const MapParams& m, const PadicRational& x) {
    PadicRational one = make_padic(1, 1, m.context());
    PadicRational shifted = x + one / m.b();
    if (shifted.is_zero()) throw PoleHit(0);
    return (m.a() / m.b()) * (one - one / (m.b() * m.b() * shifted * shifted));
}

PadicRational nth_derivative_at(const MapParams& m, int n, const PadicRational& x) {
    if (n < 2) throw InvalidArgument("general closed form needs n >= 2");
    PadicRational one = make_padic(1, 1, m.context());
    PadicRational shifted = x + one / m.b();
    if (shifted.is_zero()) throw PoleHit(0);
    PadicRational sign = make_padic(n % 2 == 0 ? 1 : -1, 1, m.context());
    return (m.a() / pow_int(m.b(), 3)) * sign * factorial(n, m.context()) /
           pow_int(shifted, n + 1);
}

PadicRational nth_derivative_at_fixed_point(const MapParams& m, int n, FixedPoint which) {
    if (n < 2) throw InvalidArgument("closed forms cover n >= 2");
    PadicRational sign = make_padic(n % 2 == 0 ? 1 : -1, 1, m.context());
    PadicRational nf = factorial(n, m.context());
    if (which == FixedPoint::X1) return sign * nf * m.a() * pow_int(m.b(), n - 2);
    return sign * nf * pow_int(m.a(), -n) * pow_int(m.b(), n - 2) * pow_int(m.a() - m.b(), n + 1);
}

std::string case_tag_str(CaseTag t) {
    switch (t) {
        case CaseTag::Repelling_1a: return "Repelling_1a";
        case CaseTag::Indifferent_2a: return "Indifferent_2a";
        case CaseTag::Indifferent_2b: return "Indifferent_2b";
        case CaseTag::Indifferent_2c: return "Indifferent_2c";
        case CaseTag::Attracting_3a: return "Attracting_3a";
        case CaseTag::Attracting_3b: return "Attracting_3b";
        case CaseTag::Attracting_3c: return "Attracting_3c";
    }
    return "?";
}

StabilityClass stability_of(CaseTag t) {
    switch (t) {
        case CaseTag::Repelling_1a: return StabilityClass::Repelling;
        case CaseTag::Indifferent_2a:
        case CaseTag::Indifferent_2b:
        case CaseTag::Indifferent_2c: return StabilityClass::Indifferent;
        default: return StabilityClass::Attracting;
    }
}

bool realizable_in_qp(CaseTag t) { return t != CaseTag::Attracting_3c; }

CaseTag classify(const MapParams& m) {
    const long p = m.context().p;
    const long va = val_of(m.a()), vb = val_of(m.b());
    if (p > 2) {
        if (vb < va) return CaseTag::Repelling_1a;   // |b| > |a| = |2a|
        if (va < vb) return CaseTag::Indifferent_2a; // |2a| > |b|
        // |2a| = |b|: split on the multiplier numerator.
        PadicRational lam_num = make_padic(2, 1, m.context()) * m.a() - m.b();
        if (lam_num.valuation() == va) return CaseTag::Indifferent_2b;
        return CaseTag::Attracting_3b;
    }
    // p = 2: |2a| = |a|/2.
    if (vb < va) return CaseTag::Repelling_1a;
    if (vb == va) return CaseTag::Indifferent_2c;   // |2a-b| = |a| forced
    if (vb == va + 1) return CaseTag::Attracting_3b;  // |2a| = |b|
    return CaseTag::Attracting_3a;                    // |2a| > |b|
}

bool DeltaResiduals::all_zero() const {
    return d1.is_zero() && d2.is_zero() && d3.is_zero() && d3_variant.is_zero();
}

DeltaResiduals delta_identities(const MapParams& m, const PadicRational& x) {
    PadicRational one = make_padic(1, 1, m.context());
    PadicRational fx = apply(m, x);  // PoleHit for x = P
    PadicRational P = m.pole(), x2 = m.x2();
    PadicRational xp = x - P;
    PadicRational d1 = fx * xp - (m.a() / m.b()) * x * x;
    PadicRational d2 = (fx - x) * xp - ((m.a() - m.b()) / m.b()) * x * (x - x2);
    PadicRational d3 = (fx - x2) * xp - (m.a() / m.b()) * (x + one / m.a()) * (x - x2);
    PadicRational d3v = (fx - x2) * (one + ((m.a() - m.b()) * m.b() / m.a()) * (x - x2)) -
                        (m.a() - m.b()) * (x - x2) * (x + one / m.a());
    return {d1, d2, d3, d3v};
}

RadiusSequences radius_sequences(const MapParams& m, int n_max) {
    if (classify(m) != CaseTag::Repelling_1a)
        throw WrongCase("exceptional radii belong to the repelling case");
    const long va = val_of(m.a()), vb = val_of(m.b());
    RadiusSequences rs;
    for (int n = 0; n <= n_max; ++n) rs.r_exponents.push_back(vb * (n - 1) - va * n);
    for (int n = 1; n <= n_max; ++n) rs.l_exponents.push_back(va * (n - 1) - vb * n);
    return rs;
}

namespace {

struct RadiusContext {
    long va, vb, vd;
    long pole_cap;  // minimal sphere exponent inside the series domain
};

RadiusContext radius_context(const MapParams& m, RadiusGoal goal) {
    const long va = val_of(m.a()), vb = val_of(m.b());
    const long vd = val_of(m.a() - m.b());
    PadicRational x0 = goal == RadiusGoal::AttractorX1 ? m.x1() : m.x2();
    long cap = (x0 - m.pole()).valuation().value() + 1;
    return {va, vb, vd, cap};
}

void check_goal(const MapParams& m, RadiusGoal goal) {
    StabilityClass s = stability_of(classify(m));
    if (goal == RadiusGoal::SiegelX2 && s != StabilityClass::Indifferent)
        throw WrongCase("x2 is not indifferent here");
    if (goal == RadiusGoal::AttractorX2 && s != StabilityClass::Attracting)
        throw WrongCase("x2 is not attracting here");
}

// Valuation of the n-th Taylor coefficient d^n f(x0)/n! (the p-part of n!
// cancels in the closed forms).
long coeff_val(const RadiusContext& rc, RadiusGoal goal, long n) {
    if (goal == RadiusGoal::AttractorX1) return rc.va + (n - 2) * rc.vb;
    return -n * rc.va + (n - 2) * rc.vb + (n + 1) * rc.vd;
}

}  // namespace

long guaranteed_radius(const MapParams& m, RadiusGoal goal) {
    check_goal(m, goal);
    RadiusContext rc = radius_context(m, goal);
    if (goal == RadiusGoal::AttractorX1) return -std::min(rc.va, rc.vb);
    return -std::min(3 * rc.vd - 2 * rc.va, rc.vd + rc.vb - rc.va);
}

long guaranteed_radius_brute(const MapParams& m, RadiusGoal goal, int n_max) {
    check_goal(m, goal);
    RadiusContext rc = radius_context(m, goal);
    const long lo = -(std::abs(rc.va) + std::abs(rc.vb) + std::abs(rc.vd) + 8);
    for (long mm = std::max(lo, rc.pole_cap);; ++mm) {
        bool ok = true;
        for (long n = 2; n <= n_max && ok; ++n)
            ok = coeff_val(rc, goal, n) + mm * (n - 1) >= 1;
        if (ok) return mm - 1;  // open ball = union of spheres at exponents >= mm
        if (mm > -lo + 64) throw InvalidArgument("no certified radius found");
    }
}

RegionReport region_report(const MapParams& m) {
    RegionReport rep{classify(m),
                     open_ball(m.x1(), guaranteed_radius(m, RadiusGoal::AttractorX1)),
                     X2Role::RepellerNone,
                     std::nullopt,
                     false,
                     0,
                     0,
                     0,
                     0,
                     {}};
    switch (stability_of(rep.tag)) {
        case StabilityClass::Repelling: {
            rep.x2_role = X2Role::RepellerNone;
            const long va = val_of(m.a()), vb = val_of(m.b());
            rep.has_exceptional_spheres = true;
            rep.r_slope = vb - va;
            rep.r_offset = -vb;
            rep.l_slope = va - vb;
            rep.l_offset = -va;
            rep.exceptional_note =
                "orbit events flagged on spheres val(x) = " + std::to_string(rep.r_slope) +
                "*n" + (rep.r_offset >= 0 ? "+" : "") + std::to_string(rep.r_offset) +
                " (n>=1) about x1 and val(x-P) = " + std::to_string(rep.l_slope) + "*n" +
                (rep.l_offset >= 0 ? "+" : "") + std::to_string(rep.l_offset) +
                " (n>=1) about the pole; the innermost pole sphere degenerates to P itself";
            break;
        }
        case StabilityClass::Indifferent:
            rep.x2_role = X2Role::SiegelDisk;
            rep.region_x2 = open_ball(m.x2(), guaranteed_radius(m, RadiusGoal::SiegelX2));
            break;
        case StabilityClass::Attracting:
            rep.x2_role = X2Role::Attractor;
            rep.region_x2 = open_ball(m.x2(), guaranteed_radius(m, RadiusGoal::AttractorX2));
            break;
    }
    return rep;
}

StopRule StopRule::valuation_reach(FixedPoint target, long threshold) {
    StopRule s;
    s.kind = Kind::ValuationReach;
    s.target = target;
    s.threshold = threshold;
    return s;
}
StopRule StopRule::leave_region(UltrametricRegion r) {
    StopRule s;
    s.kind = Kind::LeaveRegion;
    s.region = std::move(r);
    return s;
}
StopRule StopRule::enter_region(UltrametricRegion r) {
    StopRule s;
    s.kind = Kind::EnterRegion;
    s.region = std::move(r);
    return s;
}

namespace {

// n >= 1 with slope*n + offset == v, if any.
std::optional<long> sphere_index(long v, long slope, long offset) {
    if (slope == 0) return v == offset ? std::optional<long>(1) : std::nullopt;
    long num = v - offset;
    if (num % slope != 0) return std::nullopt;
    long n = num / slope;
    return n >= 1 ? std::optional<long>(n) : std::nullopt;
}

}  // namespace

Trajectory iterate(const MapParams& m, const PadicRational& x0, int n_max, const StopRule& stop,
                   std::optional<FixedPoint> reference) {
    FixedPoint ref = reference.value_or(FixedPoint::X1);
    PadicRational ref_pt = ref == FixedPoint::X1 ? m.x1() : m.x2();
    const bool repelling = classify(m) == CaseTag::Repelling_1a;
    long rs = 0, ro = 0, ls = 0, lo = 0;
    if (repelling) {
        const long va = val_of(m.a()), vb = val_of(m.b());
        rs = vb - va;
        ro = -vb;
        ls = va - vb;
        lo = -va;
    }

    Trajectory t{x0, {}, {}, TerminalEvent::Completed, 0, {}, {}};
    PadicRational x = x0;
    for (int k = 0;; ++k) {
        t.points.push_back(x);
        t.valuations.push_back((x - ref_pt).valuation());
        if (repelling && !x.is_zero()) {
            if (auto n = sphere_index(x.valuation().value(), rs, ro))
                t.r_sphere_events.emplace_back(k, *n);
            PadicRational d = x - m.pole();
            if (!d.is_zero()) {
                if (auto n = sphere_index(d.valuation().value(), ls, lo))
                    t.l_sphere_events.emplace_back(k, *n);
            }
        }

        switch (stop.kind) {
            case StopRule::Kind::ValuationReach: {
                PadicRational tgt = stop.target == FixedPoint::X1 ? m.x1() : m.x2();
                if ((x - tgt).valuation() >= stop.threshold) {
                    t.terminal = stop.target == FixedPoint::X1 ? TerminalEvent::ConvergedToX1
                                                               : TerminalEvent::ConvergedToX2;
                    t.terminal_step = k;
                    return t;
                }
                break;
            }
            case StopRule::Kind::LeaveRegion:
                if (!region_membership(*stop.region, x)) {
                    t.terminal = TerminalEvent::StoppedOnRegion;
                    t.terminal_step = k;
                    return t;
                }
                break;
            case StopRule::Kind::EnterRegion:
                if (region_membership(*stop.region, x)) {
                    t.terminal = TerminalEvent::StoppedOnRegion;
                    t.terminal_step = k;
                    return t;
                }
                break;
            case StopRule::Kind::None: break;
        }

        if (k == n_max) {
            t.terminal_step = k;
            return t;
        }
        if (x == m.pole()) {
            t.terminal = TerminalEvent::PoleHit;
            t.terminal_step = k;
            return t;
        }
        x = apply(m, x);
    }
}

long siegel_invariance_test(const MapParams& m, long sphere_exponent, int samples, int iterations,
                            std::uint64_t seed, bool enforce_region) {
    if (enforce_region) {
        RegionReport rep = region_report(m);
        if (rep.x2_role != X2Role::SiegelDisk)
            throw WrongCase("x2 has no Siegel disk in this case");
        if (sphere_exponent < rep.region_x2->radius_exponent + 1)
            throw WrongCase("sphere is not inside the Siegel disk");
    }
    const int guard = static_cast<int>(std::max<long>(m.context().precision,
                                                      sphere_exponent + 40));
    UltrametricRegion s = sphere(m.x2(), sphere_exponent);
    Rng rng(seed);
    long violations = 0;
    for (int i = 0; i < samples; ++i) {
        PadicRational x = sample_sphere(s, rng);
        for (int k = 0; k < iterations; ++k) {
            if (x == m.pole()) {
                ++violations;
                break;
            }
            x = apply(m, x).ball_representative(guard);
            if (!((x - m.x2()).valuation() == sphere_exponent)) {
                ++violations;
                break;
            }
        }
    }
    return violations;
}

BasinResult basin_test(const MapParams& m, const PadicRational& x0, int n_max,
                       long valuation_threshold) {
    const int guard = static_cast<int>(valuation_threshold + 34);
    const int window = 10;
    PadicRational x = x0;
    std::deque<std::pair<ExtValuation, ExtValuation>> hist;
    for (int k = 0; k <= n_max; ++k) {
        ExtValuation v1 = (x - m.x1()).valuation();
        ExtValuation v2 = (x - m.x2()).valuation();
        if (v1 >= valuation_threshold) return {BasinOutcome::ConvergedX1, k, std::nullopt};
        if (v2 >= valuation_threshold) return {BasinOutcome::ConvergedX2, k, std::nullopt};
        hist.emplace_back(v1, v2);
        if (hist.size() > static_cast<size_t>(window + 1)) hist.pop_front();
        if (hist.size() == static_cast<size_t>(window + 1)) {
            bool receding = true;
            for (size_t i = 1; i < hist.size() && receding; ++i)
                receding = hist[i].first <= hist[i - 1].first &&
                           hist[i].second <= hist[i - 1].second;
            if (receding) return {BasinOutcome::Escaped, k, std::nullopt};
        }
        if (x == m.pole()) return {BasinOutcome::Escaped, k, k};
        x = apply(m, x).ball_representative(guard);
    }
    return {BasinOutcome::Undecided, n_max, std::nullopt};
}

std::vector<PadicRational> preimages(const MapParams& m, const PadicRational& y) {
    if (y.is_zero()) return {m.x1()};  // a x^2 = 0: the double root at x1
    return solve_quadratic(m.a(), -(m.b() * y), -y);
}

bool period2_identity_holds(const MapParams& m) {
    const PadicRational &a = m.a(), &b = m.b();
    PadicRational A = a * (a + b), B = a + b;
    PadicRational c3 = (a - b) * A;
    PadicRational c2 = (a - b) * B - A;
    PadicRational c1 = (a - b) - B;
    return c3 == a * (a * a - b * b) && c2 == -(b * (a + b)) && c1 == -(b + b);
}

std::vector<PadicRational> period2_points(const MapParams& m) {
    const PadicRational &a = m.a(), &b = m.b();
    const auto& ctx = m.context();
    if ((a + b).is_zero()) throw DegenerateParams("a + b = 0: no 2-cycle");
    PadicRational three = make_padic(3, 1, ctx);
    if (b == three * a)
        throw DegenerateParams("b = 3a: the 2-cycle quadratic collapses onto x2");

    PadicRational A = a * (a + b), B = a + b, C = make_padic(1, 1, ctx);
    const long target = ctx.precision - 4;
    PadicRational disc = B * B - make_padic(4, 1, ctx) * A * C;
    long guard = std::max<long>(0, val_of(make_padic(4, 1, ctx) * A) - val_of(disc));

    for (int attempt = 0; attempt < 4; ++attempt) {
        int lift = ctx.precision + static_cast<int>(guard) + 8 * (attempt + 1);
        auto roots = solve_quadratic(A, B, C, lift);
        if (roots.empty()) return {};
        bool deep_enough = true;
        for (const auto& r : roots) {
            try {
                PadicRational d = apply(m, apply(m, r)) - r;
                if (!d.is_zero() && !(d.valuation() >= target)) deep_enough = false;
            } catch (const PoleHit&) {
                deep_enough = false;
            }
        }
        if (deep_enough) return roots;
    }
    throw InvalidArgument("2-cycle roots failed to reach the forward-residual target");
}

}  // namespace padyn
