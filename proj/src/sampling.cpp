#include "padyn/sampling.hpp"

namespace padyn {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("empty draw range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r = u64();
    while (r >= limit) r = u64();
    return r % n;
}

mpz_class sample_unit(Rng& rng, long p, int digits) {
    const auto up = static_cast<std::uint64_t>(p);
    mpz_class u = 1 + static_cast<long>(rng.below(up - 1));
    mpz_class scale(p);
    for (int i = 1; i < digits; ++i) {
        u += scale * static_cast<long>(rng.below(up));
        scale *= p;
    }
    return u;
}

PadicRational sample_sphere(const UltrametricRegion& s, std::uint64_t seed) {
    Rng rng(seed);
    return sample_sphere(s, rng);
}

PadicRational sample_sphere(const UltrametricRegion& s, Rng& rng) {
    if (s.kind != RegionKind::Sphere) throw InvalidArgument("sample_sphere needs a sphere");
    const auto& ctx = s.center.context();
    mpz_class u = sample_unit(rng, ctx.p, ctx.precision);
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(ctx.p),
                  static_cast<unsigned long>(s.radius_exponent < 0 ? -s.radius_exponent
                                                                   : s.radius_exponent));
    mpq_class off(u);
    if (s.radius_exponent >= 0)
        off *= mpq_class(pe);
    else
        off /= mpq_class(pe);
    off.canonicalize();
    return s.center + PadicRational(off, ctx);
}

PadicRational sample_scaled_unit(Rng& rng, PrimeContext ctx, int vmin, int vmax,
                                 bool signed_draw) {
    if (vmin > vmax) throw InvalidArgument("bad valuation range");
    const long v = vmin + static_cast<long>(rng.below(static_cast<std::uint64_t>(vmax - vmin + 1)));
    mpz_class u = sample_unit(rng, ctx.p, 4);
    if (signed_draw && rng.coin()) u = -u;
    mpz_class pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(ctx.p),
                  static_cast<unsigned long>(v < 0 ? -v : v));
    mpq_class q(u);
    if (v >= 0)
        q *= mpq_class(pe);
    else
        q /= mpq_class(pe);
    q.canonicalize();
    return PadicRational(q, ctx);
}

PadicRational sample_rational(Rng& rng, PrimeContext ctx, bool allow_zero) {
    if (allow_zero && rng.below(50) == 0) return make_padic(0, 1, ctx);
    PadicRational num = sample_scaled_unit(rng, ctx, -6, 6, true);
    mpz_class den_u = sample_unit(rng, ctx.p, 4);
    mpq_class q = num.value() / mpq_class(den_u);
    q.canonicalize();
    return PadicRational(q, ctx);
}

}  // namespace padyn
