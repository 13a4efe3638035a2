#pragma once

#include <cstdint>
#include <random>

#include "padyn/padic.hpp"
#include "padyn/region.hpp"

namespace padyn {

// Deterministic across platforms: mt19937_64 output is pinned by the
// standard, and bounded draws use explicit rejection (uniform_int_distribution
// is implementation-defined and would break byte-identical reports).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t u64() { return eng_(); }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);

    bool coin() { return (u64() & 1) != 0; }

private:
    std::mt19937_64 eng_;
};

// Integer unit drawn digit-wise: first digit in [1, p-1], the rest in
// [0, p-1], `digits` of them total. Uniform over p-units in [1, p^digits).
mpz_class sample_unit(Rng& rng, long p, int digits);

// c + p^m * u with u a unit of context-precision digits; provably on the
// sphere.
PadicRational sample_sphere(const UltrametricRegion& s, std::uint64_t seed);
PadicRational sample_sphere(const UltrametricRegion& s, Rng& rng);

// p^v * u with v in [vmin, vmax] and unit u < p^4; the default generator
// for random map parameters and test points. Sign drawn when signed_draw.
PadicRational sample_scaled_unit(Rng& rng, PrimeContext ctx, int vmin, int vmax,
                                 bool signed_draw = false);

// General rational for property tests: p^v * u/u' with v in [-6, 6], both
// units < p^4, random sign; occasionally exactly zero.
PadicRational sample_rational(Rng& rng, PrimeContext ctx, bool allow_zero = true);

}  // namespace padyn
