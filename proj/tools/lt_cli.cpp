// lt: formal-group tables, verification suites and lattice builds from the
// command line. Exit codes: 0 pass, 1 check failure, 2 usage or input
// error, 3 uncertifiable (precision exhausted).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "lt/verify.hpp"

namespace {

using lt::json;

struct Options {
    int p = 2, h = 1, prec = 12, wmax = 12, level = 0, jobs = 1, samples = 5;
    std::uint64_t seed = 1;
    std::string suite = "all", in, out, action;
    bool timings = false;
};

void emit(const json &j, const std::string &out)
{
    const std::string text = j.dump(2) + "\n";
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f)
        throw std::runtime_error("cannot write " + out);
    f << text;
}

json read_json(const std::string &path)
{
    if (path.empty())
        throw lt::InputError("--in is required");
    std::ifstream f(path);
    if (!f)
        throw lt::InputError("cannot read " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error &e) {
        throw lt::InputError(path + ": " + e.what());
    }
}

void check_bounds(const Options &o)
{
    if (o.h < 1)
        throw lt::InputError("--h must be positive");
    if (o.prec < 1)
        throw lt::InputError("--prec must be positive");
    if (o.wmax < 1)
        throw lt::InputError("--wmax must be positive");
    if (o.level < 0)
        throw lt::InputError("--level must be nonnegative");
    if (o.jobs < 1)
        throw lt::InputError("--jobs must be positive");
}

int cmd_fgl(const Options &o)
{
    check_bounds(o);
    const auto fg = lt::FormalGroupTable::make(o.p, o.h, o.prec, o.wmax);
    emit(to_json(*fg), o.out);
    return 0;
}

int cmd_verify(const Options &o)
{
    check_bounds(o);
    lt::VerifyConfig cfg;
    cfg.p = o.p;
    cfg.h = o.h;
    cfg.precision = o.prec;
    cfg.wmax = o.wmax;
    cfg.level = o.level;
    cfg.seed = o.seed;
    cfg.jobs = o.jobs;
    cfg.samples = o.samples;
    // Validate p and h before any suite runs, so bad input is exit 2.
    lt::FieldContext::make(o.p, o.h, o.prec);
    std::vector<lt::Check> checks;
    try {
        checks = lt::run_suite(o.suite, cfg);
    } catch (const lt::PrecisionError &e) {
        checks.push_back({o.suite, "setup", "", false, false, std::nullopt, e.what(), 0});
    }
    emit(lt::report(checks, cfg, o.timings), o.out);
    for (const auto &c : checks)
        std::cerr << (c.pass ? "PASS " : c.certified ? "FAIL " : "UNCERTIFIED ") << c.suite << ": " << c.name
                  << "\n";
    return lt::exit_code(checks);
}

int cmd_module(const Options &o)
{
    if (o.level < 0 || o.jobs < 1)
        throw lt::InputError("--level and --jobs must be nonnegative and positive");
    const lt::ModuleRun r = lt::run_module(read_json(o.in), o.action, o.level, o.jobs);
    emit(r.report, o.out);
    std::cerr << (r.exit_code == 0 ? "PASS" : r.exit_code == 1 ? "FAIL" : "UNCERTIFIED") << " module " << o.action
              << "\n";
    return r.exit_code;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Lubin-Tate formal groups, (phi_q, Gamma) operators and lattice modules"};
    app.set_help_flag("--help", "show help");
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App *s) {
        s->add_option("--p", o.p, "prime");
        s->add_option("--h", o.h, "degree of F over Q_p");
        s->add_option("--prec", o.prec, "p-adic precision N");
        s->add_option("--wmax", o.wmax, "weighted truncation degree");
        s->add_option("--out", o.out, "output file (default stdout)");
        s->add_option("--jobs", o.jobs, "worker threads");
    };

    CLI::App *fgl = app.add_subcommand("fgl", "dump the formal group table");
    common(fgl);

    CLI::App *verify = app.add_subcommand("verify", "run verification suites");
    common(verify);
    verify->add_option("--suite", o.suite, "fgl, operators, weierstrass, lattice or all");
    verify->add_option("--level", o.level, "lattice level n (default 3h-1)");
    verify->add_option("--seed", o.seed, "random seed");
    verify->add_option("--samples", o.samples, "random samples per property")->check(CLI::PositiveNumber);
    verify->add_flag("--timings", o.timings, "include per-check timings");

    CLI::App *module = app.add_subcommand("module", "build M(D) from a module spec");
    module->add_option("action", o.action, "build, stability or roundtrip")
        ->required()
        ->check(CLI::IsMember({"build", "stability", "roundtrip"}));
    module->add_option("--in", o.in, "module spec JSON")->required();
    module->add_option("--out", o.out, "output file (default stdout)");
    module->add_option("--level", o.level, "lattice level n (default 3h-1)");
    module->add_option("--jobs", o.jobs, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (fgl->parsed())
            return cmd_fgl(o);
        if (verify->parsed())
            return cmd_verify(o);
        return cmd_module(o);
    } catch (const lt::InputError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const lt::PrecisionError &e) {
        std::cerr << "uncertifiable: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
