#include "lambdalin/harness.hpp"
#include "lambdalin/parser.hpp"
#include "lambdalin/rewrite.hpp"
#include "lambdalin/stdlib.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lambdalin;

namespace {

// Value wrapper: the tree itself stays immutable and shared.
struct PyTerm {
    TermPtr t;
};

const Bindings* names(bool use_prelude) {
    return use_prelude ? &prelude::bindings() : nullptr;
}

struct PyOutcome {
    std::string status;
    PyTerm term;
    long steps;
};

PyOutcome outcome_of(const NormalizeOutcome& o) {
    return {o.status == NormalizeStatus::Normal ? "normal" : "exhausted", {o.term}, o.steps};
}

}  // namespace

PYBIND11_MODULE(lambdalin, m) {
    m.doc() = "interpreter for an untyped lambda calculus with linear combinations of terms";

    py::register_exception<ParseError>(m, "ParseError");

    py::class_<PyTerm>(m, "Term")
        .def("__str__", [](const PyTerm& s) { return print_term(s.t, names(true)); })
        .def("__repr__",
             [](const PyTerm& s) { return "Term(" + print_term(s.t, names(true)) + ")"; })
        .def("__eq__", [](const PyTerm& a, const PyTerm& b) { return alpha_ac_equal(a.t, b.t); })
        .def("__hash__", [](const PyTerm& s) { return std::hash<std::string>{}(print_term(canonicalize(s.t))); })
        .def_property_readonly("size", [](const PyTerm& s) { return s.t->size(); })
        .def_property_readonly("closed", [](const PyTerm& s) { return s.t->closed(); })
        .def_property_readonly("is_base", [](const PyTerm& s) { return is_base(s.t); })
        .def_property_readonly("is_normal", [](const PyTerm& s) { return is_normal(s.t); })
        .def_property_readonly("free_vars", [](const PyTerm& s) { return s.t->free_vars(); });

    py::class_<PyOutcome>(m, "Outcome")
        .def_readonly("status", &PyOutcome::status)
        .def_readonly("term", &PyOutcome::term)
        .def_readonly("steps", &PyOutcome::steps)
        .def("__repr__", [](const PyOutcome& o) {
            return "Outcome(" + o.status + ", steps=" + std::to_string(o.steps) + ")";
        });

    m.def(
        "parse",
        [](const std::string& src, bool use_prelude) {
            return PyTerm{parse_term(src, names(use_prelude))};
        },
        py::arg("src"), py::arg("use_prelude") = true);

    m.def(
        "print_term",
        [](const PyTerm& t, bool use_prelude) { return print_term(t.t, names(use_prelude)); },
        py::arg("term"), py::arg("use_prelude") = true);

    m.def(
        "normalize",
        [](const PyTerm& t, long fuel, std::optional<std::uint64_t> seed, std::size_t max_size) {
            const Strategy s =
                seed ? Strategy::random_seeded(*seed) : Strategy::deterministic();
            return outcome_of(normalize_with_strategy(t.t, fuel, s, max_size));
        },
        py::arg("term"), py::arg("fuel") = 10000, py::arg("seed") = py::none(),
        py::arg("max_size") = 0);

    m.def(
        "normalize_expr",
        [](const std::string& src, long fuel) {
            return outcome_of(normalize(parse_term(src, names(true)), fuel));
        },
        py::arg("src"), py::arg("fuel") = 10000);

    m.def(
        "trace_lines",
        [](const std::string& src, long fuel) {
            Trace tr = trace(parse_term(src, names(true)), fuel);
            std::vector<std::string> lines;
            for (const TraceStep& s : tr.steps)
                lines.push_back(format_trace_step(s, names(true)));
            return lines;
        },
        py::arg("src"), py::arg("fuel") = 10000);

    m.def("alpha_ac_equal",
          [](const PyTerm& a, const PyTerm& b) { return alpha_ac_equal(a.t, b.t); });

    m.def("church", [](unsigned n) { return PyTerm{prelude::church(n)}; });

    m.def("prelude_names", [] {
        std::vector<std::string> out;
        for (const auto& [name, _] : prelude::bindings()) out.push_back(name);
        return out;
    });

    m.def("prelude_term", [](const std::string& name) {
        for (const auto& [n, t] : prelude::bindings())
            if (n == name) return PyTerm{t};
        throw py::key_error(name);
    });

    m.def(
        "restriction_suite",
        [](long fuel, int seeds) {
            SuiteReport r = restriction_suite(fuel, seeds);
            return py::make_tuple(r.passed, r.failed, r.lines);
        },
        py::arg("fuel") = 1000, py::arg("seeds") = 5);

    m.def(
        "critical_pair_suite",
        [](long fuel) {
            SuiteReport r = critical_pair_suite(fuel);
            return py::make_tuple(r.passed, r.failed, r.lines);
        },
        py::arg("fuel") = 1000);

    m.def(
        "confluence_sample",
        [](long samples, long fuel, std::uint64_t seed, std::size_t max_size) {
            ConfluenceConfig cfg;
            cfg.samples = samples;
            cfg.fuel = fuel;
            cfg.gen.seed = seed;
            cfg.max_size = max_size;
            ConfluenceReport r = check_confluence_sample(cfg);
            py::dict out;
            out["total"] = r.total;
            out["agreed"] = r.agreed;
            out["disagreed"] = r.disagreed;
            out["normalized"] = r.normalized;
            out["jointly_normal"] = r.jointly_normal;
            out["shape_violations"] = r.shape_violations;
            return out;
        },
        py::arg("samples") = 200, py::arg("fuel") = 2000, py::arg("seed") = 0,
        py::arg("max_size") = 800);
}
