#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "padyn/context.hpp"
#include "padyn/errors.hpp"
#include "padyn/valuation.hpp"

namespace padyn {

// An exact rational viewed as an element of Q_p. The stored value is always
// canonical (reduced, positive denominator); mpq_class arithmetic keeps it
// that way. Norm questions are answered through valuation(), never floats.
class PadicRational {
public:
    PadicRational(mpq_class value, PrimeContext ctx);

    const mpq_class& value() const { return v_; }
    const PrimeContext& context() const { return ctx_; }

    ExtValuation valuation() const;
    bool is_zero() const { return v_ == 0; }

    PadicRational operator+(const PadicRational& o) const;
    PadicRational operator-(const PadicRational& o) const;
    PadicRational operator*(const PadicRational& o) const;
    PadicRational operator/(const PadicRational& o) const;  // DivisionByZero
    PadicRational operator-() const;

    bool operator==(const PadicRational& o) const;
    bool operator!=(const PadicRational& o) const { return !(*this == o); }

    // "num/den" in lowest terms; used by every report writer.
    std::string str() const;

    // Same element of the closed ball at exponent valuation()+depth, with
    // numerator/denominator height bounded by p^depth: p^gamma * (n/m mod
    // p^depth). Sampling suites iterate on these to stop the digit-doubling
    // of exact map iteration; valuation decisions below the guard depth are
    // unaffected.
    PadicRational ball_representative(int depth) const;

private:
    void check_ctx(const PadicRational& o) const {
        if (!(ctx_ == o.ctx_)) throw ContextMismatch();
    }
    mpq_class v_;
    PrimeContext ctx_;
};

PadicRational make_padic(long num, long den, PrimeContext ctx);
PadicRational make_padic(const std::string& num_slash_den, PrimeContext ctx);

ExtValuation valuation(const PadicRational& x);
NormOrder norm_compare(const PadicRational& x, const PadicRational& y);

// x = p^gamma * (digits[0] + digits[1] p + ...), digits[0] != 0 for x != 0.
// Zero is gamma = 0 with all-zero digits by convention.
struct CanonicalExpansion {
    long gamma;
    std::vector<long> digits;  // length = context precision
};

CanonicalExpansion canonical_digits(const PadicRational& x);

// Partial sum p^gamma * sum digits[j] p^j as an exact rational; the
// round-trip invariant is valuation(x - partial_sum(x)) >= gamma + N.
PadicRational expansion_partial_sum(const CanonicalExpansion& e, PrimeContext ctx);

}  // namespace padyn
