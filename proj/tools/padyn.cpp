#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "padyn/dynamics.hpp"
#include "padyn/ergodicity.hpp"
#include "padyn/instances.hpp"
#include "padyn/report.hpp"
#include "padyn/suites.hpp"
#include "padyn/version.hpp"

using namespace padyn;

namespace {

struct Options {
    long p = 0;
    std::string a, b, x;
    int precision = 64;
    std::uint64_t seed = 1;
    int samples = 100;
    int iters = 10;
    long sphere_exp = 1;
    long residue_exp = 0;  // 0 = pick r0 exponent + 3
    std::string out;
    std::string format;
    std::string suite = "all";
};

std::uint64_t env_seed_or(std::uint64_t fallback) {
    const char* e = std::getenv("PADYN_SEED");
    if (!e || !*e) return fallback;
    return std::strtoull(e, nullptr, 10);
}

mpz_class pow_p(long p, long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    return r;
}

// Accepts "num", "num/den", or the shorthand "p^v" / "p^v*u" with u itself
// a rational.
PadicRational parse_rational(const std::string& s, PrimeContext ctx) {
    auto caret = s.find('^');
    if (caret == std::string::npos) return make_padic(s, ctx);
    long base = std::stol(s.substr(0, caret));
    if (base != ctx.p) throw InvalidArgument("power base in '" + s + "' must equal p");
    auto star = s.find('*', caret);
    long v = std::stol(
        s.substr(caret + 1, star == std::string::npos ? std::string::npos : star - caret - 1));
    PadicRational u = star == std::string::npos
                          ? make_padic(1, 1, ctx)
                          : make_padic(s.substr(star + 1), ctx);
    mpq_class scale = v >= 0 ? mpq_class(pow_p(ctx.p, v)) : mpq_class(1, pow_p(ctx.p, -v));
    scale.canonicalize();
    return PadicRational(scale, ctx) * u;
}

void write_reports(const ReportWriter& w, const Options& o) {
    if (o.out.empty()) return;
    bool csv = o.format.empty() || o.format == "csv";
    bool rec = o.format.empty() || o.format == "records";
    w.write(o.out, csv, rec);
}

std::string clip(const std::string& s, std::size_t limit = 64) {
    if (s.size() <= limit) return s;
    return s.substr(0, limit) + "...(" + std::to_string(s.size()) + " chars)";
}

const char* terminal_str(TerminalEvent e) {
    switch (e) {
        case TerminalEvent::Completed: return "completed";
        case TerminalEvent::PoleHit: return "pole";
        case TerminalEvent::ConvergedToX1: return "reached-x1";
        case TerminalEvent::ConvergedToX2: return "reached-x2";
        case TerminalEvent::StoppedOnRegion: return "region-stop";
    }
    return "?";
}

const char* role_str(X2Role r) {
    switch (r) {
        case X2Role::Attractor: return "attractor";
        case X2Role::SiegelDisk: return "siegel-disk";
        case X2Role::RepellerNone: return "repeller (no invariant region)";
    }
    return "?";
}

void print_region_report(const RegionReport& rep) {
    std::cout << "attractor at x1: " << region_str(rep.attractor_x1) << ", measure "
              << rational_str(measure(rep.attractor_x1)) << "\n";
    std::cout << "x2 role: " << role_str(rep.x2_role) << "\n";
    if (rep.region_x2)
        std::cout << "region at x2: " << region_str(*rep.region_x2) << ", measure "
                  << rational_str(measure(*rep.region_x2)) << "\n";
    if (rep.has_exceptional_spheres)
        std::cout << "exceptional spheres: " << rep.exceptional_note << "\n";
}

Record region_record(const RegionReport& rep) {
    Record r;
    r["record"] = "regions";
    r["case"] = case_tag_str(rep.tag);
    r["attractor_x1"] = region_str(rep.attractor_x1);
    r["attractor_x1_measure"] = rational_str(measure(rep.attractor_x1));
    r["x2_role"] = role_str(rep.x2_role);
    if (rep.region_x2) {
        r["region_x2"] = region_str(*rep.region_x2);
        r["region_x2_measure"] = rational_str(measure(*rep.region_x2));
    }
    if (rep.has_exceptional_spheres) {
        r["r_sphere_exponent"] = std::to_string(rep.r_slope) + "*n" +
                                 (rep.r_offset >= 0 ? "+" : "") + std::to_string(rep.r_offset);
        r["l_sphere_exponent"] = std::to_string(rep.l_slope) + "*n" +
                                 (rep.l_offset >= 0 ? "+" : "") + std::to_string(rep.l_offset);
    }
    return r;
}

int run_classify(const Options& o) {
    PrimeContext ctx = make_context(o.p, o.precision);
    PadicRational a = parse_rational(o.a, ctx);
    PadicRational b = parse_rational(o.b, ctx);
    MapParams m(a, b);
    CaseTag tag = classify(m);
    PadicRational lam = multiplier(m, FixedPoint::X2);
    PadicRational gap = a + a - b;

    std::cout << "case: " << case_tag_str(tag) << "\n";
    std::cout << "x2: " << m.x2().str() << ", pole: " << m.pole().str() << "\n";
    std::cout << "multiplier at x2: " << lam.str() << " (valuation " << lam.valuation().str()
              << ")\n";
    std::cout << "v(a) = " << a.valuation().str() << ", v(b) = " << b.valuation().str()
              << ", v(2a-b) = " << gap.valuation().str() << "\n";
    RegionReport rep = region_report(m);
    print_region_report(rep);

    ReportWriter w;
    w.add(meta_record(o.p, a.str(), b.str(), o.precision, o.seed));
    Record r;
    r["record"] = "classify";
    r["case"] = case_tag_str(tag);
    r["x2"] = a == b ? "" : m.x2().str();
    r["multiplier"] = lam.str();
    r["multiplier_valuation"] = lam.valuation().str();
    r["v_a"] = a.valuation().str();
    r["v_b"] = b.valuation().str();
    r["v_2a_minus_b"] = gap.valuation().str();
    w.add(r);
    w.add(region_record(rep));
    write_reports(w, o);
    return 0;
}

int run_orbit(const Options& o) {
    PrimeContext ctx = make_context(o.p, o.precision);
    MapParams m(parse_rational(o.a, ctx), parse_rational(o.b, ctx));
    PadicRational x0 = parse_rational(o.x, ctx);
    Trajectory t = iterate(m, x0, o.iters);

    std::map<long, long> rev(t.r_sphere_events.begin(), t.r_sphere_events.end());
    std::map<long, long> lev(t.l_sphere_events.begin(), t.l_sphere_events.end());

    ReportWriter w;
    w.add(meta_record(o.p, m.a().str(), m.b().str(), o.precision, o.seed));
    std::cout << "step  v(x-x1)  v(x-x2)  events  value\n";
    for (std::size_t k = 0; k < t.points.size(); ++k) {
        ExtValuation v1 = (t.points[k] - m.x1()).valuation();
        ExtValuation v2 = (t.points[k] - m.x2()).valuation();
        std::string events;
        if (auto it = rev.find(static_cast<long>(k)); it != rev.end())
            events += "r" + std::to_string(it->second);
        if (auto it = lev.find(static_cast<long>(k)); it != lev.end())
            events += (events.empty() ? "" : " ") + std::string("l") + std::to_string(it->second);
        std::cout << k << "  " << v1.str() << "  " << v2.str() << "  "
                  << (events.empty() ? "-" : events) << "  " << clip(t.points[k].str()) << "\n";
        Record r;
        r["record"] = "orbit";
        r["step"] = k;
        r["value"] = t.points[k].str();
        r["v_to_x1"] = v1.str();
        r["v_to_x2"] = v2.str();
        r["events"] = events;
        w.add(r);
    }
    std::cout << "terminal: " << terminal_str(t.terminal) << " at step " << t.terminal_step
              << "\n";
    Record r;
    r["record"] = "orbit-terminal";
    r["event"] = terminal_str(t.terminal);
    r["step"] = t.terminal_step;
    w.add(r);
    write_reports(w, o);
    return 0;
}

int run_regions(const Options& o) {
    PrimeContext ctx = make_context(o.p, o.precision);
    MapParams m(parse_rational(o.a, ctx), parse_rational(o.b, ctx));
    RegionReport rep = region_report(m);
    std::cout << "case: " << case_tag_str(rep.tag) << "\n";
    print_region_report(rep);
    ReportWriter w;
    w.add(meta_record(o.p, m.a().str(), m.b().str(), o.precision, o.seed));
    w.add(region_record(rep));
    if (rep.tag == CaseTag::Repelling_1a) {
        RadiusSequences rs = radius_sequences(m, 6);
        std::cout << "r-sphere exponents n=0..6:";
        for (long e : rs.r_exponents) std::cout << " " << e;
        std::cout << "\nl-sphere exponents n=1..6:";
        for (long e : rs.l_exponents) std::cout << " " << e;
        std::cout << "\n";
    }
    write_reports(w, o);
    return 0;
}

int run_verify(const Options& o, bool instance_given) {
    ReportWriter w;
    Record meta;
    meta["record"] = "meta";
    meta["version"] = kVersion;
    meta["command"] = "verify";
    meta["suite"] = o.suite;
    meta["seed"] = o.seed;
    w.add(meta);

    bool all = true;
    if (instance_given && o.suite == "ergodicity") {
        std::string instance = "p=" + std::to_string(o.p) + ",b=" + o.b +
                               ",m=" + std::to_string(o.sphere_exp);
        std::vector<CheckResult> checks = ergodicity_checks_for(
            o.p, o.b, o.sphere_exp, o.residue_exp, o.seed, o.samples);
        for (const CheckResult& ck : checks) {
            all = all && ck.pass;
            std::cout << (ck.pass ? "[PASS] " : "[FAIL] ") << ck.name << ": " << ck.detail
                      << "\n";
            Record r;
            r["suite"] = o.suite;
            r["check"] = ck.name;
            r["instance"] = instance;
            r["pass"] = ck.pass;
            r["detail"] = ck.detail;
            w.add(r);
        }
    } else {
        std::vector<int> nums = suite_criteria(o.suite);
        if (nums.empty()) {
            std::cerr << "unknown suite: " << o.suite << "\n";
            return 2;
        }
        for (int n : nums) {
            CriterionResult r = run_criterion(n, o.seed);
            std::cout << r.summary_line() << "\n";
            criterion_records(r, w, o.suite);
            all = all && r.pass();
        }
    }
    write_reports(w, o);
    std::cout << (all ? "verify: all checks passed" : "verify: failures present") << "\n";
    return all ? 0 : 1;
}

int run_ergodicity(const Options& o) {
    std::string instance =
        "p=" + std::to_string(o.p) + ",b=" + o.b + ",m=" + std::to_string(o.sphere_exp);
    std::vector<CheckResult> checks =
        ergodicity_checks_for(o.p, o.b, o.sphere_exp, o.residue_exp, o.seed, o.samples);
    ReportWriter w;
    w.add(meta_record(o.p, "1/1", o.b, o.precision, o.seed));
    bool all = true;
    for (const CheckResult& ck : checks) {
        all = all && ck.pass;
        std::cout << (ck.pass ? "[PASS] " : "[FAIL] ") << ck.name << ": " << ck.detail << "\n";
        Record r;
        r["suite"] = "ergodicity";
        r["check"] = ck.name;
        r["instance"] = instance;
        r["pass"] = ck.pass;
        r["detail"] = ck.detail;
        w.add(r);
    }
    write_reports(w, o);
    return all ? 0 : 1;
}

void print_instances() {
    std::cout << "map instances (classify/orbit/regions):\n";
    for (const DemoInstance& d : demo_instances()) {
        std::cout << "  " << d.name << ": p=" << d.p << ", a=" << d.a_num;
        if (d.a_den != 1) std::cout << "/" << d.a_den;
        std::cout << ", b=" << d.b_num;
        if (d.b_den != 1) std::cout << "/" << d.b_den;
        std::cout << " -> " << case_tag_str(d.expected) << "\n";
    }
    std::cout << "sphere systems (ergodicity):\n";
    for (const SphereDemo& d : sphere_demos()) {
        std::cout << "  " << d.name << ": p=" << d.p << ", b=" << d.b_num
                  << ", sphere exponent m=" << d.rho_exponent << "\n";
    }
}

void add_common(CLI::App* cmd, Options& o, bool need_map, bool need_start) {
    auto* p = cmd->add_option("-p,--prime", o.p, "prime p");
    auto* a = cmd->add_option("-a", o.a, "parameter a (num, num/den, or p^v*u)");
    auto* b = cmd->add_option("-b", o.b, "parameter b (num, num/den, or p^v*u)");
    if (need_map) {
        p->required();
        a->required();
        b->required();
    }
    if (need_start) cmd->add_option("-x,--start", o.x, "start point")->required();
    cmd->add_option("--precision", o.precision, "working precision (digits)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "rng seed (PADYN_SEED fallback)");
    cmd->add_option("--samples", o.samples, "sample count")->check(CLI::PositiveNumber);
    cmd->add_option("--iters", o.iters, "iteration cap")->check(CLI::NonNegativeNumber);
    cmd->add_option("--sphere-exp", o.sphere_exp, "sphere radius exponent m");
    cmd->add_option("--residue-exp", o.residue_exp, "residue resolution k (0 = auto)");
    cmd->add_option("--out", o.out, "report output directory");
    cmd->add_option("--format", o.format, "machine report format")
        ->check(CLI::IsMember({"csv", "records"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact p-adic dynamics of f(x) = a x^2 / (b x + 1)"};
    app.set_version_flag("--version", kVersion);
    bool list_instances = false;
    app.add_flag("--list-instances", list_instances, "print the built-in instances and exit");

    Options o;
    o.seed = env_seed_or(1);

    CLI::App* classify_cmd =
        app.add_subcommand("classify", "fixed-point case and invariant regions");
    add_common(classify_cmd, o, true, false);
    CLI::App* orbit_cmd = app.add_subcommand("orbit", "exact forward orbit table");
    add_common(orbit_cmd, o, true, true);
    CLI::App* regions_cmd = app.add_subcommand("regions", "invariant regions and measures");
    add_common(regions_cmd, o, true, false);
    CLI::App* verify_cmd = app.add_subcommand("verify", "run acceptance suites");
    add_common(verify_cmd, o, false, false);
    verify_cmd->add_option("--suite", o.suite, "identities|classification|siegel|basins|ergodicity|all")
        ->check(CLI::IsMember({"identities", "classification", "siegel", "basins", "ergodicity",
                               "all"}));
    CLI::App* ergo_cmd =
        app.add_subcommand("ergodicity", "invariant-set pipeline on one sphere system");
    add_common(ergo_cmd, o, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (list_instances) {
        print_instances();
        return 0;
    }

    try {
        if (classify_cmd->parsed()) return run_classify(o);
        if (orbit_cmd->parsed()) return run_orbit(o);
        if (regions_cmd->parsed()) return run_regions(o);
        if (verify_cmd->parsed()) {
            bool instance_given = o.p != 0 && !o.b.empty();
            if (instance_given && o.a.empty()) o.a = "1";
            return run_verify(o, instance_given);
        }
        if (ergo_cmd->parsed()) {
            if (o.p == 0 || o.b.empty()) {
                std::cerr << "ergodicity needs -p and -b\n";
                return 2;
            }
            return run_ergodicity(o);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::cerr << "no command given (see --help)\n";
    return 2;
}
