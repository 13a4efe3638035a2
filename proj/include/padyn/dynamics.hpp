#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padyn/padic.hpp"
#include "padyn/region.hpp"
#include "padyn/sampling.hpp"

namespace padyn {

// The map f(x) = a x^2 / (b x + 1) on Q_p \ {P}, P = -1/b.
// Fixed points x1 = 0 and x2 = 1/(a-b).
class MapParams {
public:
    MapParams(PadicRational a, PadicRational b);  // DegenerateParams unless a,b!=0, a!=b

    const PadicRational& a() const { return a_; }
    const PadicRational& b() const { return b_; }
    const PrimeContext& context() const { return a_.context(); }

    PadicRational x1() const;
    PadicRational x2() const;
    PadicRational pole() const;

private:
    PadicRational a_, b_;
};

PadicRational apply(const MapParams& m, const PadicRational& x);  // PoleHit

enum class FixedPoint { X1, X2 };

// 0 at x1; (2a-b)/a at x2. Both cross-checked against the closed-form
// derivative (a/b)(1 - 1/(b^2 (x+1/b)^2)) in the test suite.
PadicRational multiplier(const MapParams& m, FixedPoint which);

// d^n f / dx^n at the fixed point, n >= 2:
//   x1: (-1)^n n! a b^(n-2)
//   x2: (-1)^n n! a^-n b^(n-2) (a-b)^(n+1)
PadicRational nth_derivative_at_fixed_point(const MapParams& m, int n, FixedPoint which);

// General closed form (a/b^3)(-1)^n n!/(x + 1/b)^(n+1), n >= 2; the
// cross-check oracle for the fixed-point formulas.
PadicRational nth_derivative_at(const MapParams& m, int n, const PadicRational& x);

// First derivative at an arbitrary point (finite x != P).
PadicRational derivative_at(const MapParams& m, const PadicRational& x);

enum class CaseTag {
    Repelling_1a,
    Indifferent_2a,
    Indifferent_2b,
    Indifferent_2c,
    Attracting_3a,
    Attracting_3b,
    Attracting_3c,
};

enum class StabilityClass { Repelling, Indifferent, Attracting };

std::string case_tag_str(CaseTag t);
StabilityClass stability_of(CaseTag t);

// 3c needs |2a| < |b| < |a|, a fractional valuation gap that Q_p's value
// group cannot realize; everything else is realizable.
bool realizable_in_qp(CaseTag t);

// Deterministic in (p, v(a), v(b), v(2a-b)).
CaseTag classify(const MapParams& m);

// Exact residuals; all must be zero for every x != P.
//   d1: f(x)(x-P) - (a/b) x^2
//   d2: (f(x)-x)(x-P) - ((a-b)/b) x (x-x2)
//   d3: (f(x)-x2)(x-P) - (a/b)(x+1/a)(x-x2)
//   d3_variant: (f(x)-x2)(1 + ((a-b)b/a)(x-x2)) - (a-b)(x-x2)(x+1/a)
struct DeltaResiduals {
    PadicRational d1, d2, d3, d3_variant;
    bool all_zero() const;
};
DeltaResiduals delta_identities(const MapParams& m, const PadicRational& x);

// Exceptional radii for the repelling case, as radius exponents:
//   r_n = |b|^(n-1)/|a|^n  ->  exponent  vb(n-1) - va n   (n >= 0)
//   l_n = |a|^(n-1)/|b|^n  ->  exponent  va(n-1) - vb n   (n >= 1); l_0 = {P}.
struct RadiusSequences {
    std::vector<long> r_exponents;  // index n = 0..n_max
    std::vector<long> l_exponents;  // index n = 1..n_max (l_0 is the point P)
};
RadiusSequences radius_sequences(const MapParams& m, int n_max);  // WrongCase unless repelling

enum class RadiusGoal { AttractorX1, SiegelX2, AttractorX2 };

// Largest open ball around the fixed point certified by the Taylor-term
// condition sup_n |c_n| r^(n-1) < 1 within the series domain (radius capped
// strictly below the pole distance). Returns the open-ball radius exponent:
//   AttractorX1: -min(va, vb)
//   SiegelX2 / AttractorX2: -min(3 vd - 2 va, vd + vb - va), vd = v(a-b)
// SiegelX2 requires x2 indifferent, AttractorX2 requires x2 attracting.
long guaranteed_radius(const MapParams& m, RadiusGoal goal);

// Same bound by explicit scan of the Taylor terms n <= n_max; the
// cross-check for guaranteed_radius.
long guaranteed_radius_brute(const MapParams& m, RadiusGoal goal, int n_max = 512);

enum class X2Role { Attractor, SiegelDisk, RepellerNone };

struct RegionReport {
    CaseTag tag;
    UltrametricRegion attractor_x1;
    X2Role x2_role;
    std::optional<UltrametricRegion> region_x2;
    // Repelling case only: exponent formulas for the exceptional spheres,
    // rendered for humans and kept as (slope, offset) pairs: exponent(n) =
    // slope * n + offset.
    bool has_exceptional_spheres = false;
    long r_slope = 0, r_offset = 0;  // around x1, spheres for n >= 1
    long l_slope = 0, l_offset = 0;  // around P,  spheres for n >= 1
    std::string exceptional_note;
};
RegionReport region_report(const MapParams& m);

enum class TerminalEvent { Completed, PoleHit, ConvergedToX1, ConvergedToX2, StoppedOnRegion };

struct StopRule {
    enum class Kind { None, ValuationReach, LeaveRegion, EnterRegion } kind = Kind::None;
    FixedPoint target = FixedPoint::X1;  // ValuationReach
    long threshold = 0;
    std::optional<UltrametricRegion> region;

    static StopRule none() { return {}; }
    static StopRule valuation_reach(FixedPoint target, long threshold);
    static StopRule leave_region(UltrametricRegion r);
    static StopRule enter_region(UltrametricRegion r);
};

// points[k+1] = f(points[k]) exactly; valuations[k] = v(points[k] - reference).
struct Trajectory {
    PadicRational start;
    std::vector<PadicRational> points;
    std::vector<ExtValuation> valuations;
    TerminalEvent terminal = TerminalEvent::Completed;
    long terminal_step = 0;
    // Exceptional-sphere events (repelling case): steps where the point sits
    // on some r_n sphere / l_n sphere, with the matching n.
    std::vector<std::pair<long, long>> r_sphere_events;  // (step, n)
    std::vector<std::pair<long, long>> l_sphere_events;
};

Trajectory iterate(const MapParams& m, const PadicRational& x0, int n_max,
                   const StopRule& stop = StopRule::none(),
                   std::optional<FixedPoint> reference = std::nullopt);

// Samples the sphere about x2 at sphere_exponent and iterates; returns the
// number of samples that ever leave the sphere. Contract inside a Siegel
// disk: 0. enforce_region=false allows probing boundary spheres that the
// disk does not cover (negative controls).
long siegel_invariance_test(const MapParams& m, long sphere_exponent, int samples,
                            int iterations, std::uint64_t seed, bool enforce_region = true);

enum class BasinOutcome { ConvergedX1, ConvergedX2, Escaped, Undecided };

struct BasinResult {
    BasinOutcome outcome;
    long steps;
    std::optional<long> pole_step;  // Escaped via the pole
};

// Valuation-threshold convergence; Escaped = distances to both fixed points
// non-decreasing over a 10-step window, or a pole hit.
BasinResult basin_test(const MapParams& m, const PadicRational& x, int n_max,
                       long valuation_threshold);

// Solutions of a x^2 - b y x - y = 0 (exact when the discriminant is a
// rational square, Hensel-lifted otherwise).
std::vector<PadicRational> preimages(const MapParams& m, const PadicRational& y);

// Roots of a(a+b) x^2 + (a+b) x + 1, the genuine 2-cycle of f: the cubic
// identity ((a-b)x - 1)(a(a+b)x^2 + (a+b)x + 1) = a(a^2-b^2)x^3 - b(a+b)x^2
// - 2bx - 1 splits f^2(x) = x off its fixed-point factors. Lifts adaptively
// until v(f^2(r) - r) >= N - 4. DegenerateParams when a+b = 0 or b = 3a
// (double root at x2; no 2-cycle).
std::vector<PadicRational> period2_points(const MapParams& m);

// Exact coefficient check of the cubic identity above for given (a, b).
bool period2_identity_holds(const MapParams& m);

}  // namespace padyn
