#include "padyn/padic.hpp"

namespace padyn {

long ExtValuation::value() const {
    if (inf_) throw InvalidArgument("valuation of zero has no finite value");
    return v_;
}

ExtValuation ExtValuation::operator-() const {
    if (inf_) throw InvalidArgument("cannot negate an infinite valuation");
    return finite(-v_);
}

PadicRational::PadicRational(mpq_class value, PrimeContext ctx)
    : v_(std::move(value)), ctx_(ctx) {
    v_.canonicalize();
}

ExtValuation PadicRational::valuation() const {
    if (v_ == 0) return ExtValuation::infinity();
    mpz_class p(ctx_.p), tmp;
    long vn = static_cast<long>(mpz_remove(tmp.get_mpz_t(), v_.get_num().get_mpz_t(), p.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(tmp.get_mpz_t(), v_.get_den().get_mpz_t(), p.get_mpz_t()));
    return ExtValuation::finite(vn - vd);
}

PadicRational PadicRational::operator+(const PadicRational& o) const {
    check_ctx(o);
    return PadicRational(v_ + o.v_, ctx_);
}

PadicRational PadicRational::operator-(const PadicRational& o) const {
    check_ctx(o);
    return PadicRational(v_ - o.v_, ctx_);
}

PadicRational PadicRational::operator*(const PadicRational& o) const {
    check_ctx(o);
    return PadicRational(v_ * o.v_, ctx_);
}

PadicRational PadicRational::operator/(const PadicRational& o) const {
    check_ctx(o);
    if (o.v_ == 0) throw DivisionByZero();
    return PadicRational(v_ / o.v_, ctx_);
}

PadicRational PadicRational::operator-() const { return PadicRational(-v_, ctx_); }

bool PadicRational::operator==(const PadicRational& o) const {
    check_ctx(o);
    return v_ == o.v_;
}

std::string PadicRational::str() const {
    return v_.get_den() == 1 ? v_.get_num().get_str() : v_.get_str();
}

PadicRational make_padic(long num, long den, PrimeContext ctx) {
    if (den == 0) throw DivisionByZero();
    mpq_class q(num, den);
    q.canonicalize();
    return PadicRational(q, ctx);
}

PadicRational make_padic(const std::string& s, PrimeContext ctx) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw InvalidArgument("not a rational: '" + s + "'");
    if (q.get_den() == 0) throw DivisionByZero();
    q.canonicalize();
    return PadicRational(q, ctx);
}

ExtValuation valuation(const PadicRational& x) { return x.valuation(); }

NormOrder norm_compare(const PadicRational& x, const PadicRational& y) {
    if (!(x.context() == y.context())) throw ContextMismatch();
    auto vx = x.valuation(), vy = y.valuation();
    if (vx == vy) return NormOrder::Equal;
    return vx > vy ? NormOrder::Less : NormOrder::Greater;  // |x| = p^-v
}

namespace {

mpz_class pow_p(long p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

// Unit part of x as a residue mod p^digits: n * m^-1 with the p-powers of
// both already stripped. Requires x != 0.
mpz_class unit_residue(const PadicRational& x, long digits) {
    const long p = x.context().p;
    mpz_class pp(p), n, m;
    mpz_remove(n.get_mpz_t(), x.value().get_num().get_mpz_t(), pp.get_mpz_t());
    mpz_remove(m.get_mpz_t(), x.value().get_den().get_mpz_t(), pp.get_mpz_t());
    mpz_class mod = pow_p(p, digits), minv;
    if (mpz_invert(minv.get_mpz_t(), m.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw InvalidArgument("denominator not invertible mod p^k");
    mpz_class r = n * minv % mod;
    if (r < 0) r += mod;
    return r;
}

}  // namespace

CanonicalExpansion canonical_digits(const PadicRational& x) {
    const int N = x.context().precision;
    CanonicalExpansion e;
    e.digits.assign(static_cast<size_t>(N), 0);
    if (x.is_zero()) {
        e.gamma = 0;
        return e;
    }
    e.gamma = x.valuation().value();
    mpz_class r = unit_residue(x, N);
    const long p = x.context().p;
    for (int i = 0; i < N; ++i) {
        mpz_class d = r % p;
        e.digits[static_cast<size_t>(i)] = d.get_si();
        r = (r - d) / p;
    }
    return e;
}

PadicRational expansion_partial_sum(const CanonicalExpansion& e, PrimeContext ctx) {
    mpz_class acc = 0;
    for (size_t i = e.digits.size(); i-- > 0;) acc = acc * ctx.p + e.digits[i];
    mpq_class q(acc);
    if (e.gamma >= 0)
        q *= mpq_class(pow_p(ctx.p, e.gamma));
    else
        q /= mpq_class(pow_p(ctx.p, -e.gamma));
    q.canonicalize();
    return PadicRational(q, ctx);
}

PadicRational PadicRational::ball_representative(int depth) const {
    if (is_zero()) return *this;
    if (depth < 1) throw InvalidArgument("representative depth must be >= 1");
    const long gamma = valuation().value();
    mpz_class r = unit_residue(*this, depth);
    mpq_class q(r);
    if (gamma >= 0)
        q *= mpq_class(pow_p(ctx_.p, gamma));
    else
        q /= mpq_class(pow_p(ctx_.p, -gamma));
    q.canonicalize();
    return PadicRational(q, ctx_);
}

}  // namespace padyn
