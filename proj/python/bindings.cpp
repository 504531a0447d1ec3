#include "pizza/ch_io.hpp"
#include "pizza/etr.hpp"
#include "pizza/instance_io.hpp"
#include "pizza/measure.hpp"
#include "pizza/reductions.hpp"
#include "pizza/render.hpp"
#include "pizza/solver.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace pizza;

namespace {

// Rationals cross the boundary as strings; ints, Fractions and decimal strings are accepted on input.
Q to_q(const py::handle& h) { return Q::parse(py::str(h).cast<std::string>()); }

std::vector<Q> to_qs(const py::iterable& xs) {
    std::vector<Q> out;
    for (auto x : xs) out.push_back(to_q(x));
    return out;
}

std::vector<std::string> strs(const std::vector<Q>& v) {
    std::vector<std::string> out;
    for (const auto& q : v) out.push_back(q.str());
    return out;
}

struct PyInstance {
    CompiledInstance ci;
};

PyInstance load(const std::string& text) { return PyInstance{compile(normalize_instance(parse_instance(text)).first)}; }

py::dict report_dict(const VerifyReport& r) {
    py::dict d;
    d["pass"] = r.pass;
    d["plus"] = strs(r.plus);
    d["minus"] = strs(r.minus);
    d["gaps"] = strs(r.gaps);
    d["max_gap"] = r.max_gap.str();
    d["warnings"] = r.warnings;
    return d;
}

}  // namespace

PYBIND11_MODULE(_pizza, m) {
    m.doc() = "Exact pizza-sharing kernel: square-cut paths, Borsuk-Ulam evaluation, solver and reductions";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
    py::register_exception<ReductionError>(m, "ReductionError", PyExc_ValueError);
    py::register_exception<SolverBudgetError>(m, "SolverBudgetError", PyExc_RuntimeError);

    py::class_<PyInstance>(m, "Instance")
        .def_static("from_json", &load, py::arg("text"))
        .def_property_readonly("colors", [](const PyInstance& p) { return p.ci.colors(); })
        .def_property_readonly("atom_count", [](const PyInstance& p) { return p.ci.atom_count(); })
        .def_property_readonly("totals", [](const PyInstance& p) { return strs(p.ci.totals); })
        .def("to_json", [](const PyInstance& p) { return serialize_instance(p.ci.source); });

    m.def("bu_eval", [](const PyInstance& p, const py::iterable& coords) {
        return strs(bu_eval(p.ci, make_sphere_point(to_qs(coords))));
    }, py::arg("instance"), py::arg("coords"), "Side-A mass per color at a sphere point (exact)");

    m.def("residual", [](const PyInstance& p, const py::iterable& coords) {
        return residual(p.ci, make_sphere_point(to_qs(coords))).str();
    }, py::arg("instance"), py::arg("coords"));

    m.def("region_mass", [](const PyInstance& p, const py::iterable& coords) {
        std::vector<std::pair<std::string, std::string>> out;
        for (auto& [a, b] : region_mass_oracle(p.ci.source, sphere_to_solution(make_sphere_point(to_qs(coords)))))
            out.emplace_back(a.str(), b.str());
        return out;
    }, py::arg("instance"), py::arg("coords"), "Clipping oracle masses (side A, side B) per color");

    m.def("solve", [](const PyInstance& p, double eps, int turns, std::uint64_t seed, const std::string& method, int seeds) {
        SolverConfig cfg;
        cfg.epsilon = eps;
        cfg.turns = turns;
        cfg.rng_seed = seed;
        cfg.seeds = seeds;
        cfg.method = method == "grid" ? SolveMethod::Grid : SolveMethod::Multistart;
        SolveReport rep;
        {
            py::gil_scoped_release release;
            rep = solve(p.ci, cfg);
        }
        py::dict d;
        d["coords"] = strs(rep.point.coords);
        d["residual"] = rep.residual.str();
        d["verified_exact"] = rep.verified_exact;
        d["turns"] = turn_count(rep.path);
        d["y_monotone"] = is_y_monotone(rep.path);
        d["evaluations"] = rep.evaluations;
        d["path_json"] = serialize_path(rep.point);
        return d;
    }, py::arg("instance"), py::arg("eps") = 1e-3, py::arg("turns") = -1, py::arg("seed") = 1,
       py::arg("method") = "multistart", py::arg("seeds") = 64);

    m.def("export_etr", [](const PyInstance& p, int k) {
        auto f = export_etr(p.ci, k);
        py::dict d;
        d["text"] = f.text;
        d["variables"] = f.variables;
        return d;
    }, py::arg("instance"), py::arg("turns"));

    m.def("etr_evaluate", [](const std::string& text, const py::iterable& coords) {
        auto e = etr_evaluate(text, to_qs(coords));
        py::dict d;
        d["satisfied"] = e.satisfied;
        d["conjuncts"] = e.conjuncts;
        d["conjuncts_satisfied"] = e.conjuncts_satisfied;
        return d;
    }, py::arg("text"), py::arg("coords"));

    m.def("reduce", [](const std::string& ch_text, const std::string& kind, const std::string& eps, int delta, bool approximate) {
        auto ch = parse_ch(ch_text);
        ReductionOptions opt;
        opt.exact = !approximate;
        Q e = Q::parse(eps);
        std::pair<PizzaInstance, ReductionMeta> out;
        switch (parse_reduction_kind(kind)) {
            case ReductionKind::Overlapping: out = reduce_overlapping(ch); break;
            case ReductionKind::Checkerboard: out = reduce_checkerboard(ch, e, opt); break;
            case ReductionKind::Straight: out = reduce_straight(ch, e, delta, opt); break;
            case ReductionKind::Exact: out = reduce_exact(ch); break;
        }
        return std::make_pair(serialize_instance(out.first), serialize_meta(out.second));
    }, py::arg("ch_json"), py::arg("kind") = "overlapping", py::arg("eps") = "1/1000", py::arg("delta") = 0,
       py::arg("approximate") = false, "Returns (instance_json, meta_json)");

    m.def("map_back", [](const std::string& meta_text, const std::string& path_text) {
        return serialize_ch_solution(path_to_ch_cuts(parse_meta(meta_text), parse_path(path_text).solution));
    }, py::arg("meta_json"), py::arg("path_json"));

    m.def("verify_ch", [](const std::string& ch_text, const std::string& sol_text, const std::string& eps) {
        return report_dict(verify_ch(parse_ch(ch_text), parse_ch_solution(sol_text), Q::parse(eps)));
    }, py::arg("ch_json"), py::arg("solution_json"), py::arg("eps"));

    m.def("verify_path", [](const PyInstance& p, const std::string& path_text, const std::string& eps, int turns) {
        return report_dict(verify_scpath(p.ci.source, parse_path(path_text).solution, Q::parse(eps), turns));
    }, py::arg("instance"), py::arg("path_json"), py::arg("eps"), py::arg("turns") = -1);

    m.def("verify_lines", [](const PyInstance& p, const std::string& lines_text, const std::string& eps) {
        return report_dict(verify_straight(p.ci.source, parse_lines(lines_text), Q::parse(eps)));
    }, py::arg("instance"), py::arg("lines_json"), py::arg("eps"));

    m.def("render_svg", [](const PyInstance& p, const std::string& path_text) {
        RenderOptions opt;
        FeasibleSolution sol;
        if (!path_text.empty()) {
            sol = parse_path(path_text).solution;
            opt.path = &sol;
        }
        return render_svg(p.ci.source, opt);
    }, py::arg("instance"), py::arg("path_json") = "");
}
