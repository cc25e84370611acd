// Python bindings: JSON-shaped entry points over the formal-group table, the
// verification suites and the lattice build. Results cross as JSON text and
// are decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lt/verify.hpp"

namespace py = pybind11;

namespace {

std::string formal_group(int p, int h, int prec, int wmax)
{
    return to_json(*lt::FormalGroupTable::make(p, h, prec, wmax)).dump();
}

std::pair<std::string, int> verify(const std::string &suite, int p, int h, int prec, int wmax, int level,
                                   std::uint64_t seed, int samples, int jobs)
{
    lt::VerifyConfig cfg{p, h, prec, wmax, level, seed, jobs, samples};
    lt::FieldContext::make(p, h, prec);
    std::vector<lt::Check> checks;
    {
        py::gil_scoped_release release;
        checks = lt::run_suite(suite, cfg);
    }
    return {lt::report(checks, cfg, false).dump(), lt::exit_code(checks)};
}

std::pair<std::string, int> module(const std::string &spec, const std::string &action, int level, int jobs)
{
    lt::json j;
    try {
        j = lt::json::parse(spec);
    } catch (const lt::json::parse_error &e) {
        throw lt::InputError(std::string("module spec: ") + e.what());
    }
    py::gil_scoped_release release;
    const lt::ModuleRun r = lt::run_module(j, action, level, jobs);
    return {r.report.dump(), r.exit_code};
}

} // namespace

PYBIND11_MODULE(_lt, m)
{
    m.doc() = "Lubin-Tate formal groups, operators and lattice modules";
    py::register_exception<lt::InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<lt::PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);
    m.def("formal_group", &formal_group, py::arg("p"), py::arg("h"), py::arg("prec"), py::arg("wmax"));
    m.def("verify", &verify, py::arg("suite"), py::arg("p"), py::arg("h"), py::arg("prec"), py::arg("wmax"),
          py::arg("level"), py::arg("seed"), py::arg("samples"), py::arg("jobs"));
    m.def("module", &module, py::arg("spec"), py::arg("action"), py::arg("level"), py::arg("jobs"));
}
