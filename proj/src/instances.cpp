#include "padyn/instances.hpp"

namespace padyn {

const std::vector<DemoInstance>& demo_instances() {
    static const std::vector<DemoInstance> all = {
        {"repelling-p5", 5, 5, 1, 1, 1, CaseTag::Repelling_1a},
        {"siegel-p3", 3, 1, 1, 3, 1, CaseTag::Indifferent_2a},
        {"indifferent-unit-p5", 5, 1, 1, 4, 1, CaseTag::Indifferent_2b},
        {"indifferent-unit-p3", 3, 1, 1, -2, 1, CaseTag::Indifferent_2b},
        {"indifferent-p2", 2, 1, 1, 3, 1, CaseTag::Indifferent_2c},
        {"attracting-deep-p2", 2, 1, 1, 4, 1, CaseTag::Attracting_3a},
        {"attracting-edge-p2", 2, 1, 1, 6, 1, CaseTag::Attracting_3b},
        {"attracting-edge-p3", 3, 1, 1, 5, 1, CaseTag::Attracting_3b},
    };
    return all;
}

const std::vector<SphereDemo>& sphere_demos() {
    static const std::vector<SphereDemo> all = {
        {"sphere-p5-b5", 5, 5, 1},
        {"sphere-p3-b3", 3, 3, 1},
        {"sphere-p3-b9", 3, 9, 1},
        {"sphere-p3-b12", 3, 12, 1},
        {"sphere-p7-b7", 7, 7, 1},
    };
    return all;
}

MapParams make_map(const DemoInstance& d, int precision) {
    PrimeContext ctx = make_context(d.p, precision);
    return MapParams(make_padic(d.a_num, d.a_den, ctx), make_padic(d.b_num, d.b_den, ctx));
}

SphereInstance make_sphere_instance(const SphereDemo& d, int precision) {
    PrimeContext ctx = make_context(d.p, precision);
    return SphereInstance(ctx, make_padic(d.b_num, 1, ctx), d.rho_exponent);
}

}  // namespace padyn
