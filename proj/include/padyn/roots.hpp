#pragma once

#include <optional>
#include <vector>

#include "padyn/padic.hpp"

namespace padyn {

// Square root in Q_p for p > 2 (UnsupportedPrime at p = 2). Present iff
// valuation(x) is even and the unit part is a quadratic residue mod p.
// The result is p^(v/2) times an integer lift, exact as a rational, with
// valuation(r^2 - x) >= valuation(x) + lift_digits (default: context N).
std::optional<PadicRational> sqrt_hensel(const PadicRational& x);
std::optional<PadicRational> sqrt_hensel(const PadicRational& x, int lift_digits);

// Roots of A x^2 + B x + C over Q_p, p > 2. Exact rational roots whenever
// the discriminant is a perfect rational square; otherwise Hensel-lifted
// roots r with valuation(A r^2 + B r + C) >= valuation(disc) + lift_digits
// - valuation(4A). The guard valuation(4A) - valuation(disc) is what a
// caller must absorb on top of the lift depth.
std::vector<PadicRational> solve_quadratic(const PadicRational& A,
                                           const PadicRational& B,
                                           const PadicRational& C);
std::vector<PadicRational> solve_quadratic(const PadicRational& A,
                                           const PadicRational& B,
                                           const PadicRational& C,
                                           int lift_digits);

}  // namespace padyn
