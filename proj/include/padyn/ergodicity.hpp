#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padyn/dynamics.hpp"
#include "padyn/padic.hpp"
#include "padyn/region.hpp"

namespace padyn {

// The normalized system f(x) = x^2/(bx+1) (a = 1, 0 < v(b)) restricted to
// the sphere S_rho(x2), rho = p^-m, m >= 1, p > 2. x2 = 1/(1-b) is a unit
// and indifferent (|2-b| = 1 is automatic); the sphere sits inside the
// Siegel disk of radius 1/|1-b| = 1.
class SphereInstance {
public:
    SphereInstance(PrimeContext ctx, PadicRational b, long rho_exponent);

    const PrimeContext& context() const { return ctx_; }
    const PadicRational& b() const { return b_; }
    long m() const { return m_; }
    long vb() const { return vb_; }
    long r0_exponent() const { return m_ + vb_; }  // r0 = rho |b|

    MapParams map() const;
    PadicRational x2() const;
    PadicRational pole() const;
    UltrametricRegion sphere_region() const;  // S_rho(x2)

    PadicRational sample_point(std::uint64_t seed) const;

private:
    PrimeContext ctx_;
    PadicRational b_;
    long m_;
    long vb_;
};

enum class BallVariant { OpenBalls, ClosedBalls };

// A = B_r0(y) u B_r0(f(y)), both balls of the chosen variant.
struct InvariantSetCandidate {
    PadicRational y;
    PadicRational fy;
    BallVariant variant;
    UltrametricRegion ball1, ball2;
    HaarMeasure set_measure;     // 2 * per-ball measure
    HaarMeasure sphere_measure;  // mu(S_rho(x2))
    bool saturates_sphere() const { return set_measure == sphere_measure; }
};

// Finite verification vehicle: the sphere's residues mod p^k and the map
// they induce through modular inversion of (b x + 1). Sound because every
// modeled denominator is a unit (checked; ResidueModelInvalid otherwise),
// so residue(f(x)) = transition(residue(x)) for exact x.
class ResidueModel {
public:
    ResidueModel(const SphereInstance& inst, long k);

    long k() const { return k_; }
    const mpz_class& modulus() const { return pk_; }
    const std::vector<mpz_class>& residues() const { return residues_; }

    mpz_class residue_of(const PadicRational& x) const;  // requires v(x) >= 0, unit denominator
    mpz_class transition(const mpz_class& r) const;

    // Cycle lengths of the induced permutation, sorted; the complete
    // ball-dynamics diagnostic at this resolution.
    std::vector<long> cycle_lengths() const;

private:
    const SphereInstance inst_;
    long k_;
    mpz_class pk_;
    std::vector<mpz_class> residues_;
};

// Image of a sub-r0 ball inside the sphere is exactly the equal-radius ball
// about f(center): both containment directions over the residue model.
// Precondition: ball strictly inside the sphere (radius < rho) and
// k >= effective closed exponent + 2.
bool ball_image_check(const SphereInstance& inst, const UltrametricRegion& ball, long k);

// v(f(y) - y) for y on the sphere; the contract is equality with m exactly
// (so same-radius balls about y and f(y) of any smaller radius are disjoint).
struct StepDisplacement {
    ExtValuation valuation;
    bool equals_m;
};
StepDisplacement step_displacement_check(const SphereInstance& inst, const PadicRational& y);

// Exact residual of
//   (f2(x)-x)(x-P) - ((1-b)/b) [ f(x)(x+1)/((f(x)-P) b) + x ] (x-x2),
// which expands to zero identically. Must be 0 for every x off the poles.
PadicRational two_step_identity_check(const SphereInstance& inst, const PadicRational& x);

// v(f2(y) - y) against the bound m + v(b): satisfied iff >=, strict iff >.
// Both recorded; suites aggregate, never assume.
struct ReturnDisplacement {
    ExtValuation valuation;
    bool satisfies_leq;
    bool strict;
};
ReturnDisplacement return_displacement_check(const SphereInstance& inst, const PadicRational& y);

// DisjointnessFailure if the two balls intersect (would contradict the
// step-displacement equality; flagged loudly, never silently).
InvariantSetCandidate build_invariant_set(const SphereInstance& inst, const PadicRational& y,
                                          BallVariant variant);

struct InvarianceSweep {
    bool forward_closed;
    long checked;
    std::vector<std::pair<mpz_class, mpz_class>> violations;  // (residue, image) escaping A
};
// Exhaustive: every sphere residue lying in A must map into A. k >= r0_exponent + 2.
InvarianceSweep invariance_check(const SphereInstance& inst, const InvariantSetCandidate& A,
                                 long k);

enum class ErgodicityVerdict { NonErgodicWitnessFound, NoWitnessAtThisResolution };

std::string verdict_str(ErgodicityVerdict v);

struct CandidateOutcome {
    BallVariant variant;
    HaarMeasure set_measure;
    HaarMeasure sphere_measure;
    bool saturates;
    bool forward_closed;
    long violations;
    bool witness;  // forward closed and 0 < mu(A) < mu(S)
};

struct ErgodicityReport {
    long p;
    std::string b;
    long m;
    long k;
    std::vector<long> step_displacements;        // v(f(y)-y) per seed
    std::vector<long> return_displacements;      // v(f2(y)-y) per seed
    long return_bound;                           // m + v(b)
    long return_satisfied;                       // count meeting >= bound
    long return_strict;                          // count strictly > bound
    std::vector<CandidateOutcome> candidates;    // both variants, per seed
    std::vector<long> cycle_lengths;             // ball dynamics at resolution k
    ErgodicityVerdict verdict;
    std::optional<InvariantSetCandidate> witness;
};

// Full pipeline: displacement checks on seeded sphere points, both ball
// variants built and swept, verdict NonErgodicWitnessFound iff some
// candidate is forward-closed with measure strictly between 0 and the
// sphere's. Always returns a report; never throws for valid instances.
ErgodicityReport ergodicity_verdict(const SphereInstance& inst,
                                    const std::vector<std::uint64_t>& seeds, long k);

// Residual of S f S^-1 (x) - h(x) with S(x) = ax, f the normalized map and
// h(x) = x^2/(bx + a); identically zero, PoleHit at x = -a/b.
PadicRational conjugation_check(const PadicRational& a, const PadicRational& b,
                                const PadicRational& x);

}  // namespace padyn
