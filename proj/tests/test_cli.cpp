#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    std::string capture = "/tmp/padyn_cli_capture_" + std::to_string(counter++) + ".txt";
    std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + PADYN_CLI_PATH + " " + args +
                      " >" + capture + " 2>&1";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(capture);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(capture.c_str());
    return {code, ss.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path fresh_dir(const std::string& tag) {
    std::filesystem::path d = std::filesystem::path("/tmp") / ("padyn_cli_" + tag);
    std::filesystem::remove_all(d);
    return d;
}

}  // namespace

TEST_CASE("classify prints the case and regions") {
    RunResult r = run_cli("classify -p 5 -a 5 -b 1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "case: Repelling_1a"));
    CHECK(contains(r.output, "multiplier at x2: 9/5"));
    CHECK(contains(r.output, "exceptional spheres"));

    RunResult s = run_cli("classify -p 3 -a 1 -b 3");
    CHECK(s.exit_code == 0);
    CHECK(contains(s.output, "case: Indifferent_2a"));
    CHECK(contains(s.output, "siegel-disk"));
}

TEST_CASE("parameter shorthand p^v*u") {
    RunResult r = run_cli("classify -p 5 -a 5^1 -b 5^0*2/3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "case: Repelling_1a"));

    RunResult bad = run_cli("classify -p 5 -a 3^1 -b 1");
    CHECK(bad.exit_code == 2);
    CHECK(contains(bad.output, "must equal p"));
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli("").exit_code == 2);                        // no command
    CHECK(run_cli("classify -p 5").exit_code == 2);           // missing -a/-b
    CHECK(run_cli("classify -p 5 -a 1 -b 1").exit_code == 2); // a = b is degenerate
    CHECK(run_cli("classify -p 4 -a 1 -b 2").exit_code == 2); // p not prime
    CHECK(run_cli("classify -p 5 -a 5 -b 1 --precision 0").exit_code == 2);
    CHECK(run_cli("verify --suite bogus").exit_code == 2);    // unknown suite
    CHECK(run_cli("ergodicity").exit_code == 2);              // needs -p/-b
}

TEST_CASE("version and instance listing") {
    CHECK(run_cli("--version").exit_code == 0);
    RunResult r = run_cli("--list-instances");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "repelling-p5"));
    CHECK(contains(r.output, "sphere-p3-b3"));
    CHECK(contains(r.output, "Attracting_3a"));
}

TEST_CASE("orbit table with sphere events and terminal states") {
    RunResult r = run_cli("orbit -p 5 -a 5 -b 1 --start=1/5 --iters 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "r1"));
    CHECK(contains(r.output, "terminal: completed at step 3"));

    RunResult pole = run_cli("orbit -p 5 -a 5 -b 1 --start=-1 --iters 5");
    CHECK(pole.exit_code == 0);
    CHECK(contains(pole.output, "terminal: pole at step 0"));
}

TEST_CASE("regions command prints radius ladders for the repelling case") {
    RunResult r = run_cli("regions -p 5 -a 5 -b 1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "repeller"));
    CHECK(contains(r.output, "r-sphere exponents"));

    RunResult s = run_cli("regions -p 2 -a 1 -b 4");
    CHECK(s.exit_code == 0);
    CHECK(contains(s.output, "attractor"));
}

TEST_CASE("verify suites: green path and honest failures") {
    RunResult ok = run_cli("verify --suite identities");
    CHECK(ok.exit_code == 0);
    CHECK(contains(ok.output, "[PASS] 01 norm-axioms"));
    CHECK(contains(ok.output, "[PASS] 02 delta-identities"));
    CHECK(contains(ok.output, "verify: all checks passed"));

    RunResult bad = run_cli("verify --suite ergodicity");
    CHECK(bad.exit_code == 1);
    CHECK(contains(bad.output, "[FAIL] 10 sphere-displacement-laws"));
    CHECK(contains(bad.output, "[FAIL] 11 invariant-set-witness"));
    CHECK(contains(bad.output, "verify: failures present"));
}

TEST_CASE("verify on an explicit sphere instance") {
    RunResult won = run_cli("verify --suite ergodicity -p 3 -b 3 --sphere-exp 1 --samples 20");
    CHECK(won.exit_code == 0);
    CHECK(contains(won.output, "NonErgodicWitnessFound"));
    CHECK(contains(won.output, "mu(A)/mu(S) = 1/3"));

    RunResult none = run_cli("verify --suite ergodicity -p 5 -b 5 --sphere-exp 1 --samples 20");
    CHECK(none.exit_code == 1);
    CHECK(contains(none.output, "NoWitnessAtThisResolution"));
    CHECK(contains(none.output, "[FAIL] return-bound"));
}

TEST_CASE("ergodicity command mirrors the instance checks") {
    RunResult won = run_cli("ergodicity -p 3 -b 12 --sphere-exp 1 --samples 10");
    CHECK(won.exit_code == 0);
    CHECK(contains(won.output, "[PASS] witness"));

    RunResult none = run_cli("ergodicity -p 7 -b 7 --sphere-exp 1 --samples 10");
    CHECK(none.exit_code == 1);
    CHECK(contains(none.output, "NoWitnessAtThisResolution"));
}

TEST_CASE("reports are byte-identical for a fixed seed") {
    auto d1 = fresh_dir("rep1"), d2 = fresh_dir("rep2");
    std::string args = "verify --suite classification --seed 5 --out ";
    CHECK(run_cli(args + d1.string()).exit_code == 0);
    CHECK(run_cli(args + d2.string()).exit_code == 0);
    CHECK(slurp(d1 / "report.csv") == slurp(d2 / "report.csv"));
    CHECK(slurp(d1 / "report.ndjson") == slurp(d2 / "report.ndjson"));
    CHECK(contains(slurp(d1 / "report.ndjson"), "\"check\":"));
}

TEST_CASE("PADYN_SEED env matches --seed") {
    auto d1 = fresh_dir("env1"), d2 = fresh_dir("env2");
    CHECK(run_cli("ergodicity -p 3 -b 3 --samples 5 --out " + d1.string(),
                  "PADYN_SEED=99").exit_code == 0);
    CHECK(run_cli("ergodicity -p 3 -b 3 --samples 5 --seed 99 --out " + d2.string())
              .exit_code == 0);
    CHECK(slurp(d1 / "report.csv") == slurp(d2 / "report.csv"));
    CHECK(slurp(d1 / "report.ndjson") == slurp(d2 / "report.ndjson"));
}

TEST_CASE("format flag selects which report files appear") {
    auto d1 = fresh_dir("fmt_csv");
    CHECK(run_cli("regions -p 5 -a 5 -b 1 --format csv --out " + d1.string()).exit_code == 0);
    CHECK(std::filesystem::exists(d1 / "report.csv"));
    CHECK_FALSE(std::filesystem::exists(d1 / "report.ndjson"));

    auto d2 = fresh_dir("fmt_rec");
    CHECK(run_cli("regions -p 5 -a 5 -b 1 --format records --out " + d2.string()).exit_code == 0);
    CHECK_FALSE(std::filesystem::exists(d2 / "report.csv"));
    CHECK(std::filesystem::exists(d2 / "report.ndjson"));
}
