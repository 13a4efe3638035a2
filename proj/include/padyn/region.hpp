#pragma once

#include <gmpxx.h>

#include "padyn/padic.hpp"

namespace padyn {

enum class RegionKind { OpenBall, ClosedBall, Sphere };

// radius = p^(-radius_exponent). Membership is a valuation comparison:
//   OpenBall:   v(x - c) >  m
//   ClosedBall: v(x - c) >= m
//   Sphere:     v(x - c) == m
struct UltrametricRegion {
    RegionKind kind;
    PadicRational center;
    long radius_exponent;
};

UltrametricRegion open_ball(PadicRational center, long exponent);
UltrametricRegion closed_ball(PadicRational center, long exponent);
UltrametricRegion sphere(PadicRational center, long exponent);

bool region_membership(const UltrametricRegion& r, const PadicRational& x);

// Set equality. Balls of equal radius are identical iff either center lies
// in the other (ultrametric center-freeness); spheres iff the centers are
// strictly closer than the radius.
bool region_equal(const UltrametricRegion& a, const UltrametricRegion& b);

// Haar measure, normalized so the closed unit ball has measure 1:
// mu(closed, l) = p^-l, mu(open, l) = p^-(l+1), mu(sphere, l) = p^-l (1 - 1/p).
using HaarMeasure = mpq_class;
HaarMeasure measure(const UltrametricRegion& r);

std::string region_str(const UltrametricRegion& r);

}  // namespace padyn
