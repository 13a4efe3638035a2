#pragma once

#include <cstdint>

namespace padyn {

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Shared by every value in a computation: the prime and the working
// precision N (digit expansions, Hensel lift depth, residue models).
struct PrimeContext {
    long p;
    int precision;

    bool operator==(const PrimeContext&) const = default;
};

// Validates primality eagerly and N >= 1.
PrimeContext make_context(long p, int precision = 64);

}  // namespace padyn
