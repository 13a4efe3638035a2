#pragma once

#include <string>
#include <vector>

#include "padyn/dynamics.hpp"
#include "padyn/ergodicity.hpp"

namespace padyn {

// One demonstration instance per realizable case, plus the variants the
// guaranteed-radius formulas distinguish.
struct DemoInstance {
    std::string name;
    long p;
    long a_num, a_den;
    long b_num, b_den;
    CaseTag expected;
};

const std::vector<DemoInstance>& demo_instances();

struct SphereDemo {
    std::string name;
    long p;
    long b_num;
    long rho_exponent;
};

// Sphere systems for the invariant-set pipeline: the default p=5 instance,
// the p=3 instances (b=3 and b=12 are genuine open-ball witnesses, b=9 is
// not), and p=7 for cycle-structure diagnostics.
const std::vector<SphereDemo>& sphere_demos();

MapParams make_map(const DemoInstance& d, int precision = 64);
SphereInstance make_sphere_instance(const SphereDemo& d, int precision = 64);

}  // namespace padyn
