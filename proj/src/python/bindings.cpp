#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "semilab/diagnostics.hpp"
#include "semilab/dilation.hpp"
#include "semilab/errors.hpp"
#include "semilab/gheat.hpp"
#include "semilab/gridfn.hpp"
#include "semilab/runner.hpp"

namespace py = pybind11;
using namespace semilab;

namespace {

py::array_t<double> to_array(const GridFunction& f) {
    py::array_t<double> out(static_cast<py::ssize_t>(f.size()));
    auto v = f.values();
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

GridFunction from_array(const Grid& g, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    if (a.ndim() != 1) throw DomainError("expected a one-dimensional array");
    return GridFunction(g, std::vector<double>(a.data(), a.data() + a.size()));
}

py::dict result_dict(const ScenarioResult& r) {
    py::list rows;
    for (const auto& row : r.rows) {
        py::dict d;
        d["check_name"] = row.check_name;
        d["measured"] = row.measured;
        d["bound"] = row.bound;
        d["pass"] = row.pass;
        rows.append(d);
    }
    py::dict out;
    out["scenario_id"] = r.scenario_id;
    out["rows"] = rows;
    out["overall"] = r.overall;
    out["wall_time"] = r.wall_time;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Grid semigroups: dilation, G-heat, and difference-quotient diagnostics";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<GridMismatch>(m, "GridMismatch", PyExc_ValueError);
    py::register_exception<KernelTooWide>(m, "KernelTooWide", PyExc_ValueError);
    py::register_exception<CFLViolation>(m, "CFLViolation", PyExc_ValueError);
    py::register_exception<UsageError>(m, "UsageError", PyExc_RuntimeError);

    py::enum_<Extension>(m, "Extension")
        .value("clamp", Extension::ConstantClamp)
        .value("periodic", Extension::Periodic);

    py::class_<Grid>(m, "Grid")
        .def(py::init(&make_grid), py::arg("a"), py::arg("b"), py::arg("n"),
             py::arg("extension") = Extension::ConstantClamp)
        .def_readonly("a", &Grid::a)
        .def_readonly("b", &Grid::b)
        .def_readonly("n", &Grid::n)
        .def_readonly("dx", &Grid::dx)
        .def_readonly("extension", &Grid::extension)
        .def("nodes", [](const Grid& g) {
            py::array_t<double> out(static_cast<py::ssize_t>(g.n));
            for (std::size_t i = 0; i < g.n; ++i) out.mutable_data()[i] = g.x(i);
            return out;
        })
        .def("__eq__", [](const Grid& a, const Grid& b) { return a == b; });

    py::class_<GridFunction>(m, "GridFunction")
        .def(py::init(&from_array), py::arg("grid"), py::arg("values"))
        .def_property_readonly("grid", &GridFunction::grid)
        .def_property_readonly("values", &to_array)
        .def("__len__", &GridFunction::size)
        .def("to_csv", [](const GridFunction& f) {
            std::ostringstream os;
            write_csv(f, os);
            return os.str();
        });

    m.def("sample", [](const std::string& name, const Grid& g) { return sample(FunctionSpec::parse(name), g); },
          py::arg("name"), py::arg("grid"), "Sample a catalog function such as 'tent' or 'gauss(1)'.");
    m.def("sup_norm", &sup_norm);
    m.def("lip_constant", &lip_constant);
    m.def("gauss_convolve", &gauss_convolve, py::arg("f"), py::arg("variance"));

    m.def("dilate", &dilate, py::arg("f"), py::arg("r"));
    m.def("dilate_naive", &dilate_naive, py::arg("f"), py::arg("r"));
    m.def("window_radius", &window_radius, py::arg("t"), py::arg("dx"));

    py::class_<GHeatConfig>(m, "GHeatConfig")
        .def(py::init([](double lo, double hi, double cfl) {
                 GHeatConfig c{lo, hi, cfl};
                 c.validate();
                 return c;
             }),
             py::arg("sigma_lo") = 0.5, py::arg("sigma_hi") = 1.0, py::arg("cfl") = 0.5)
        .def_readonly("sigma_lo", &GHeatConfig::sigma_lo)
        .def_readonly("sigma_hi", &GHeatConfig::sigma_hi)
        .def_readonly("cfl", &GHeatConfig::cfl);
    m.def("fd_evolve", &fd_evolve, py::arg("f"), py::arg("t"), py::arg("config") = GHeatConfig{});
    m.def("nisio_evolve", &nisio_evolve, py::arg("f"), py::arg("t"), py::arg("n_steps"),
          py::arg("config") = GHeatConfig{});

    py::class_<SemigroupEvaluator>(m, "Semigroup")
        .def("evolve", &SemigroupEvaluator::evolve, py::arg("f"), py::arg("t"))
        .def("effective_time", &SemigroupEvaluator::effective_time)
        .def_property_readonly("name", &SemigroupEvaluator::name);
    py::class_<DilationSemigroup, SemigroupEvaluator>(m, "DilationSemigroup").def(py::init<Grid>());
    py::enum_<GHeatScheme>(m, "GHeatScheme")
        .value("fd", GHeatScheme::FiniteDifference)
        .value("nisio", GHeatScheme::NisioProduct);
    py::class_<GHeatSemigroup, SemigroupEvaluator>(m, "GHeatSemigroup")
        .def(py::init<Grid, GHeatConfig, GHeatScheme, std::size_t>(), py::arg("grid"),
             py::arg("config") = GHeatConfig{}, py::arg("scheme") = GHeatScheme::FiniteDifference,
             py::arg("steps_per_unit_time") = 256);

    m.def(
        "generator_probe",
        [](const SemigroupEvaluator& S, const GridFunction& f, std::vector<double> ladder,
           const GridFunction& reference, double trim) {
            ProbeOptions opt;
            opt.trim = trim;
            const QuotientReport r = generator_probe(S, f, HLadder(std::move(ladder)), reference, opt);
            py::list rows;
            for (const auto& row : r.rows) {
                rows.append(py::make_tuple(row.h, row.quotient_sup_norm, row.deviation, row.trim_fraction));
            }
            py::dict d;
            d["rows"] = rows;
            d["limit_deviation"] = r.limit_deviation;
            d["verdict"] = std::string(to_string(r.verdict));
            return d;
        },
        py::arg("semigroup"), py::arg("f"), py::arg("ladder"), py::arg("reference"), py::arg("trim") = 0.0);

    m.def("scenarios", [] {
        py::list out;
        for (const auto& s : scenario_catalog()) out.append(py::make_tuple(std::string(s.id), std::string(s.summary)));
        return out;
    });
    m.def(
        "run_scenario",
        [](const std::string& id, const std::vector<std::string>& settings, std::optional<std::string> out) {
            ScenarioConfig cfg = parse_config({}, settings);
            cfg.scenario_id = id;
            cfg.write_artifacts = out.has_value();
            if (out) cfg.out_dir = *out;
            ScenarioResult r;
            {
                py::gil_scoped_release release;
                r = run_scenario(cfg);
            }
            return result_dict(r);
        },
        py::arg("scenario"), py::arg("settings") = std::vector<std::string>{}, py::arg("out") = py::none());
}
