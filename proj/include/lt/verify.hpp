#pragma once

// Verification suites over the formal group, the operators, Weierstrass
// division and the lattice construction. Every check records the identity
// it tests; precision exhaustion is reported as an uncertified check
// instead of aborting the run.

#include <optional>
#include <string>
#include <vector>

#include "lt/io.hpp"

namespace lt {

struct Check {
    std::string suite;
    std::string name;
    std::string anchor; // the identity being tested
    bool pass = false;
    bool certified = true;
    std::optional<std::int64_t> margin;
    std::string detail;
    double seconds = 0;
};

struct VerifyConfig {
    int p = 2;
    int h = 1;
    int precision = 12;
    int wmax = 12;
    int level = 0; // 0: 3h - 1
    std::uint64_t seed = 1;
    int jobs = 1;
    int samples = 5;
};

std::vector<Check> verify_fgl(const VerifyConfig &cfg);
std::vector<Check> verify_operators(const VerifyConfig &cfg);
std::vector<Check> verify_weierstrass(const VerifyConfig &cfg);
std::vector<Check> verify_lattice(const VerifyConfig &cfg);
// suite: fgl, operators, weierstrass, lattice or all
std::vector<Check> run_suite(const std::string &suite, const VerifyConfig &cfg);

// 0 all pass, 1 some check failed, 3 only uncertified outcomes.
int exit_code(const std::vector<Check> &checks);
json report(const std::vector<Check> &checks, const VerifyConfig &cfg, bool timings);

struct ModuleRun {
    json report;
    int exit_code = 0; // as for the suites
};
// Builds M(D) for a module spec at level n (0: 3h - 1) and runs one action:
// "build", "stability" or "roundtrip".
ModuleRun run_module(const json &spec, const std::string &action, int level = 0, int jobs = 1);

} // namespace lt
