#include "padyn/region.hpp"

namespace padyn {

UltrametricRegion open_ball(PadicRational center, long exponent) {
    return {RegionKind::OpenBall, std::move(center), exponent};
}
UltrametricRegion closed_ball(PadicRational center, long exponent) {
    return {RegionKind::ClosedBall, std::move(center), exponent};
}
UltrametricRegion sphere(PadicRational center, long exponent) {
    return {RegionKind::Sphere, std::move(center), exponent};
}

bool region_membership(const UltrametricRegion& r, const PadicRational& x) {
    ExtValuation v = (x - r.center).valuation();
    switch (r.kind) {
        case RegionKind::OpenBall: return v > r.radius_exponent;
        case RegionKind::ClosedBall: return v >= r.radius_exponent;
        case RegionKind::Sphere: return v == r.radius_exponent;
    }
    return false;
}

bool region_equal(const UltrametricRegion& a, const UltrametricRegion& b) {
    if (a.kind != b.kind || a.radius_exponent != b.radius_exponent) return false;
    ExtValuation d = (a.center - b.center).valuation();
    switch (a.kind) {
        case RegionKind::OpenBall: return d > a.radius_exponent;
        case RegionKind::ClosedBall: return d >= a.radius_exponent;
        // Spheres coincide only when the centers are closer than the radius;
        // a center on the sphere shifts which shells are in the set.
        case RegionKind::Sphere: return d > a.radius_exponent;
    }
    return false;
}

namespace {

mpq_class p_power(long p, long e) {
    mpz_class num;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(e < 0 ? -e : e));
    mpq_class q(num);
    if (e < 0) q = 1 / q;
    return q;
}

}  // namespace

HaarMeasure measure(const UltrametricRegion& r) {
    const long p = r.center.context().p;
    switch (r.kind) {
        case RegionKind::ClosedBall: return p_power(p, -r.radius_exponent);
        case RegionKind::OpenBall: return p_power(p, -(r.radius_exponent + 1));
        case RegionKind::Sphere: {
            mpq_class m = p_power(p, -r.radius_exponent);
            return m * mpq_class(p - 1, p);
        }
    }
    return 0;
}

std::string region_str(const UltrametricRegion& r) {
    const char* k = r.kind == RegionKind::OpenBall    ? "open_ball"
                    : r.kind == RegionKind::ClosedBall ? "closed_ball"
                                                       : "sphere";
    return std::string(k) + "(center=" + r.center.str() +
           ", exp=" + std::to_string(r.radius_exponent) + ")";
}

}  // namespace padyn
