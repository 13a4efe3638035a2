#include "padyn/roots.hpp"

namespace padyn {
namespace {

mpz_class pow_p(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

mpz_class powmod(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class invmod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw InvalidArgument("not invertible");
    return r;
}

// Square root mod an odd prime via Tonelli-Shanks; nullopt for non-residues.
std::optional<mpz_class> sqrt_mod_p(const mpz_class& a0, long p) {
    mpz_class P(p), a = a0 % P;
    if (a < 0) a += P;
    if (a == 0) return mpz_class(0);
    if (powmod(a, (P - 1) / 2, P) != 1) return std::nullopt;
    if (P % 4 == 3) return powmod(a, (P + 1) / 4, P);
    // P = 1 mod 4: full Tonelli-Shanks with the first non-residue as helper.
    mpz_class Q = P - 1;
    long S = 0;
    while (Q % 2 == 0) {
        Q /= 2;
        ++S;
    }
    mpz_class z = 2;
    while (powmod(z, (P - 1) / 2, P) != P - 1) ++z;
    mpz_class M(S), c = powmod(z, Q, P), t = powmod(a, Q, P), r = powmod(a, (Q + 1) / 2, P);
    while (t != 1) {
        long i = 0;
        mpz_class tt = t;
        while (tt != 1) {
            tt = tt * tt % P;
            ++i;
        }
        mpz_class b = c;
        for (long j = 0; j < M.get_si() - i - 1; ++j) b = b * b % P;
        M = i;
        c = b * b % P;
        t = t * c % P;
        r = r * b % P;
    }
    return r;
}

// Newton lift of a mod-p square root of u to mod p^digits (p odd, u unit).
mpz_class lift_sqrt(const mpz_class& root_mod_p, const mpz_class& u, long p, int digits) {
    mpz_class r = root_mod_p;
    long have = 1;
    while (have < digits) {
        have = std::min<long>(2 * have, static_cast<long>(digits));
        mpz_class mod = pow_p(p, have);
        // r <- r + (u - r^2) / (2r), integral because u - r^2 = 0 mod p^have/2.
        mpz_class corr = (u % mod - r * r % mod) % mod;
        r = (r + corr * invmod(2 * r % mod, mod)) % mod;
        if (r < 0) r += mod;
    }
    return r;
}

}  // namespace

std::optional<PadicRational> sqrt_hensel(const PadicRational& x) {
    return sqrt_hensel(x, x.context().precision);
}

std::optional<PadicRational> sqrt_hensel(const PadicRational& x, int lift_digits) {
    const auto& ctx = x.context();
    if (ctx.p == 2) throw UnsupportedPrime("square roots at p = 2 are out of scope");
    if (x.is_zero()) return x;
    const long v = x.valuation().value();
    if (v % 2 != 0) return std::nullopt;

    // Exact path: perfect rational square.
    if (x.value() > 0 && mpz_perfect_square_p(x.value().get_num().get_mpz_t()) &&
        mpz_perfect_square_p(x.value().get_den().get_mpz_t())) {
        mpz_class sn, sd;
        mpz_sqrt(sn.get_mpz_t(), x.value().get_num().get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), x.value().get_den().get_mpz_t());
        mpq_class q(sn);
        q /= mpq_class(sd);
        q.canonicalize();
        return PadicRational(q, ctx);
    }

    const long p = ctx.p;
    mpz_class pp(p), n, m;
    mpz_remove(n.get_mpz_t(), x.value().get_num().get_mpz_t(), pp.get_mpz_t());
    mpz_remove(m.get_mpz_t(), x.value().get_den().get_mpz_t(), pp.get_mpz_t());
    mpz_class mod = pow_p(p, lift_digits);
    mpz_class u = n * invmod(((m % mod) + mod) % mod, mod) % mod;
    if (u < 0) u += mod;

    auto r0 = sqrt_mod_p(u, p);
    if (!r0) return std::nullopt;
    mpz_class r = lift_sqrt(*r0, u, p, lift_digits);

    mpq_class q(r);
    if (v >= 0)
        q *= mpq_class(pow_p(p, v / 2));
    else
        q /= mpq_class(pow_p(p, -v / 2));
    q.canonicalize();
    return PadicRational(q, ctx);
}

std::vector<PadicRational> solve_quadratic(const PadicRational& A, const PadicRational& B,
                                           const PadicRational& C) {
    return solve_quadratic(A, B, C, A.context().precision);
}

std::vector<PadicRational> solve_quadratic(const PadicRational& A, const PadicRational& B,
                                           const PadicRational& C, int lift_digits) {
    const auto& ctx = A.context();
    if (ctx.p == 2) throw UnsupportedPrime("quadratics at p = 2 are out of scope");
    if (A.is_zero()) throw DegenerateLeadingCoefficient();
    PadicRational two = make_padic(2, 1, ctx), four = make_padic(4, 1, ctx);
    PadicRational disc = B * B - four * A * C;
    if (disc.is_zero()) return {(-B) / (two * A)};
    auto s = sqrt_hensel(disc, lift_digits);
    if (!s) return {};
    PadicRational r1 = (-B + *s) / (two * A);
    PadicRational r2 = (-B - *s) / (two * A);
    return {r1, r2};
}

}  // namespace padyn
