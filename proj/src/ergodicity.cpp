#include "padyn/ergodicity.hpp"

#include <algorithm>
#include <set>

#include "padyn/errors.hpp"

namespace padyn {
namespace {

mpz_class pow_p(long p, long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return r;
}

void require_on_sphere(const SphereInstance& inst, const PadicRational& y) {
    if (!((y - inst.x2()).valuation() == inst.m()))
        throw InvalidArgument("point is not on the sphere");
}

long effective_closed_exponent(const UltrametricRegion& ball) {
    switch (ball.kind) {
        case RegionKind::ClosedBall: return ball.radius_exponent;
        case RegionKind::OpenBall: return ball.radius_exponent + 1;
        default: throw InvalidArgument("expected a ball, not a sphere");
    }
}

}  // namespace

SphereInstance::SphereInstance(PrimeContext ctx, PadicRational b, long rho_exponent)
    : ctx_(ctx), b_(std::move(b)), m_(rho_exponent) {
    if (ctx_.p == 2) throw InvalidArgument("sphere systems are set up for odd p");
    if (!(b_.context() == ctx_)) throw ContextMismatch();
    if (b_.is_zero()) throw DegenerateParams("b = 0 degenerates the map");
    vb_ = b_.valuation().value();
    if (vb_ < 1) throw InvalidArgument("need v(b) >= 1 so that x2 is indifferent");
    if (m_ < 1) throw InvalidArgument("need rho = p^-m with m >= 1 (sphere inside the disk)");
}

MapParams SphereInstance::map() const { return MapParams(make_padic(1, 1, ctx_), b_); }
PadicRational SphereInstance::x2() const { return map().x2(); }
PadicRational SphereInstance::pole() const { return map().pole(); }
UltrametricRegion SphereInstance::sphere_region() const { return sphere(x2(), m_); }

PadicRational SphereInstance::sample_point(std::uint64_t seed) const {
    Rng rng(seed);
    return sample_sphere(sphere_region(), rng);
}

ResidueModel::ResidueModel(const SphereInstance& inst, long k) : inst_(inst), k_(k) {
    if (k_ < inst_.m() + 1)
        throw InvalidArgument("resolution must separate the sphere: k >= m + 1");
    const long p = inst_.context().p;
    pk_ = pow_p(p, k_);
    mpz_class x2r = residue_of(inst_.x2());
    mpz_class pm = pow_p(p, inst_.m());
    mpz_class span = pow_p(p, k_ - inst_.m());
    for (mpz_class u = 1; u < span; ++u) {
        if (mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(p))) continue;
        residues_.push_back((x2r + pm * u) % pk_);
    }
}

mpz_class ResidueModel::residue_of(const PadicRational& x) const {
    const mpq_class& q = x.value();
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class dinv;
    if (mpz_invert(dinv.get_mpz_t(), den.get_mpz_t(), pk_.get_mpz_t()) == 0)
        throw ResidueModelInvalid("denominator is not a unit at this resolution");
    mpz_class r = (num % pk_) * dinv % pk_;
    if (r < 0) r += pk_;
    return r;
}

mpz_class ResidueModel::transition(const mpz_class& r) const {
    PadicRational x(mpq_class(r), inst_.context());
    return residue_of(apply(inst_.map(), x));
}

std::vector<long> ResidueModel::cycle_lengths() const {
    std::map<mpz_class, std::size_t> index;
    for (std::size_t i = 0; i < residues_.size(); ++i) index[residues_[i]] = i;
    std::vector<int> state(residues_.size(), 0);  // 0 fresh, 1 on walk, 2 closed
    std::vector<long> lengths;
    for (std::size_t start = 0; start < residues_.size(); ++start) {
        if (state[start] != 0) continue;
        std::vector<std::size_t> walk;
        std::size_t cur = start;
        while (true) {
            state[cur] = 1;
            walk.push_back(cur);
            mpz_class img = transition(residues_[cur]);
            auto it = index.find(img);
            if (it == index.end())
                throw ResidueModelInvalid("image leaves the sphere at this resolution");
            std::size_t nxt = it->second;
            if (state[nxt] == 1) {
                if (nxt != start)
                    throw ResidueModelInvalid("induced map is not a permutation");
                for (std::size_t i : walk) state[i] = 2;
                lengths.push_back(static_cast<long>(walk.size()));
                break;
            }
            if (state[nxt] == 2) throw ResidueModelInvalid("induced map is not a permutation");
            cur = nxt;
        }
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

bool ball_image_check(const SphereInstance& inst, const UltrametricRegion& ball, long k) {
    long l = effective_closed_exponent(ball);
    require_on_sphere(inst, ball.center);
    if (l < inst.m() + 1) throw InvalidArgument("ball must sit strictly inside the sphere");
    if (k < l + 2) throw InvalidArgument("resolution too coarse: need k >= ball exponent + 2");

    ResidueModel model(inst, k);
    const long p = inst.context().p;
    mpz_class pk = pow_p(p, k), pl = pow_p(p, l), steps = pow_p(p, k - l);
    mpz_class c = model.residue_of(ball.center);
    mpz_class fc = model.residue_of(apply(inst.map(), ball.center));

    std::set<mpz_class> images, target;
    for (mpz_class j = 0; j < steps; ++j) {
        images.insert(model.transition((c + pl * j) % pk));
        target.insert((fc + pl * j) % pk);
    }
    return images == target;
}

StepDisplacement step_displacement_check(const SphereInstance& inst, const PadicRational& y) {
    require_on_sphere(inst, y);
    ExtValuation v = (apply(inst.map(), y) - y).valuation();
    return {v, v == inst.m()};
}

PadicRational two_step_identity_check(const SphereInstance& inst, const PadicRational& x) {
    MapParams f = inst.map();
    PadicRational one = make_padic(1, 1, inst.context());
    PadicRational P = f.pole(), x2 = f.x2(), b = inst.b();
    PadicRational fx = apply(f, x);
    if (fx == P) throw PoleHit(1);
    PadicRational ffx = apply(f, fx);
    PadicRational lhs = (ffx - x) * (x - P);
    PadicRational bracket = fx * (x + one) / ((fx - P) * b) + x;
    PadicRational rhs = ((one - b) / b) * bracket * (x - x2);
    return lhs - rhs;
}

ReturnDisplacement return_displacement_check(const SphereInstance& inst, const PadicRational& y) {
    require_on_sphere(inst, y);
    MapParams f = inst.map();
    ExtValuation v = (apply(f, apply(f, y)) - y).valuation();
    long bound = inst.r0_exponent();
    return {v, v >= bound, v > bound};
}

InvariantSetCandidate build_invariant_set(const SphereInstance& inst, const PadicRational& y,
                                          BallVariant variant) {
    require_on_sphere(inst, y);
    PadicRational fy = apply(inst.map(), y);
    const long l = inst.r0_exponent();
    auto make_ball = [&](const PadicRational& c) {
        return variant == BallVariant::ClosedBalls ? closed_ball(c, l) : open_ball(c, l);
    };
    UltrametricRegion b1 = make_ball(y), b2 = make_ball(fy);
    // Disjoint iff the centers are farther apart than the ball radius.
    long sep = variant == BallVariant::ClosedBalls ? l : l + 1;
    if ((y - fy).valuation() >= sep)
        throw DisjointnessFailure("the two balls about y and f(y) intersect");
    HaarMeasure per_ball = measure(b1);
    HaarMeasure total = per_ball + per_ball;
    HaarMeasure sph = measure(inst.sphere_region());
    return {y, fy, variant, b1, b2, total, sph};
}

InvarianceSweep invariance_check(const SphereInstance& inst, const InvariantSetCandidate& A,
                                 long k) {
    if (k < inst.r0_exponent() + 2)
        throw InvalidArgument("resolution too coarse: need k >= r0 exponent + 2");
    ResidueModel model(inst, k);
    auto in_A = [&](const mpz_class& r) {
        PadicRational x(mpq_class(r), inst.context());
        return region_membership(A.ball1, x) || region_membership(A.ball2, x);
    };
    InvarianceSweep sweep{true, 0, {}};
    for (const mpz_class& r : model.residues()) {
        if (!in_A(r)) continue;
        ++sweep.checked;
        mpz_class img = model.transition(r);
        if (!in_A(img)) {
            sweep.forward_closed = false;
            sweep.violations.emplace_back(r, img);
        }
    }
    return sweep;
}

std::string verdict_str(ErgodicityVerdict v) {
    return v == ErgodicityVerdict::NonErgodicWitnessFound ? "NonErgodicWitnessFound"
                                                          : "NoWitnessAtThisResolution";
}

ErgodicityReport ergodicity_verdict(const SphereInstance& inst,
                                    const std::vector<std::uint64_t>& seeds, long k) {
    ErgodicityReport rep;
    rep.p = inst.context().p;
    rep.b = inst.b().str();
    rep.m = inst.m();
    rep.k = k;
    rep.return_bound = inst.r0_exponent();
    rep.return_satisfied = 0;
    rep.return_strict = 0;
    rep.verdict = ErgodicityVerdict::NoWitnessAtThisResolution;

    for (std::uint64_t seed : seeds) {
        PadicRational y = inst.sample_point(seed);
        StepDisplacement sd = step_displacement_check(inst, y);
        rep.step_displacements.push_back(sd.valuation.value());
        ReturnDisplacement rd = return_displacement_check(inst, y);
        rep.return_displacements.push_back(rd.valuation.value());
        if (rd.satisfies_leq) ++rep.return_satisfied;
        if (rd.strict) ++rep.return_strict;

        for (BallVariant variant : {BallVariant::OpenBalls, BallVariant::ClosedBalls}) {
            InvariantSetCandidate A = build_invariant_set(inst, y, variant);
            InvarianceSweep sweep = invariance_check(inst, A, k);
            bool proper = A.set_measure > 0 && A.set_measure < A.sphere_measure;
            bool witness = sweep.forward_closed && proper;
            rep.candidates.push_back({variant, A.set_measure, A.sphere_measure,
                                      A.saturates_sphere(), sweep.forward_closed,
                                      static_cast<long>(sweep.violations.size()), witness});
            if (witness && !rep.witness) {
                rep.verdict = ErgodicityVerdict::NonErgodicWitnessFound;
                rep.witness = A;
            }
        }
    }
    rep.cycle_lengths = ResidueModel(inst, k).cycle_lengths();
    return rep;
}

PadicRational conjugation_check(const PadicRational& a, const PadicRational& b,
                                const PadicRational& x) {
    if (!(a.context() == b.context()) || !(a.context() == x.context())) throw ContextMismatch();
    if (a.is_zero() || b.is_zero()) throw DegenerateParams("need a != 0 and b != 0");
    PadicRational one = make_padic(1, 1, a.context());
    PadicRational t = x / a;
    PadicRational den = b * t + one;
    if (den.is_zero()) throw PoleHit(0);
    PadicRational lhs = a * (t * t / den);
    PadicRational rhs = x * x / (b * x + a);
    return lhs - rhs;
}

}  // namespace padyn
