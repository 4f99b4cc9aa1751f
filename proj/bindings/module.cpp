// Python bindings for the core operations: grids, Haar transforms, norms,
// the fractional integral and its commutators, block-norm bounds, and the
// verification suites.

#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <sstream>

#include "dyham/estimation.hpp"
#include "dyham/haar.hpp"
#include "dyham/io.hpp"
#include "dyham/norms.hpp"
#include "dyham/operators.hpp"
#include "dyham/predual.hpp"
#include "dyham/verify.hpp"

namespace py = pybind11;
using namespace dyham;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::memcpy(out.mutable_data(), v.data(), v.size() * sizeof(double));
    return out;
}

GridFunction make_function(const GridGeometry& g, py::array_t<double, py::array::c_style | py::array::forcecast> values) {
    if (values.size() != g.cell_count())
        throw std::invalid_argument("values has " + std::to_string(values.size()) +
                                    " entries, geometry has " + std::to_string(g.cell_count()) +
                                    " cells");
    std::vector<double> v(values.data(), values.data() + values.size());
    return GridFunction(g, std::move(v));
}

DyadicCube cube_at(const GridGeometry& g, int level, index_t flat) {
    return g.cube_from_flat(level, flat);  // range-checks both arguments
}

py::dict verify_suite(const std::string& suite, int n, int jmin, int J, int Jlow,
                      double p, double q, double alpha, std::uint64_t seed,
                      int ensemble, double theta) {
    SuiteConfig cfg;
    cfg.n = n;
    cfg.j_min = jmin;
    cfg.J = J;
    cfg.J_low = Jlow >= 0 ? Jlow : std::max(jmin + 1, J / 2);
    cfg.p = p;
    cfg.q = q;
    cfg.alpha = alpha;
    cfg.seed = seed;
    cfg.ensemble = ensemble;
    cfg.theta = theta;
    cfg.command_line = "python verify " + suite;
    SuiteResult res = run_suite(suite, cfg);
    py::list checks;
    for (const auto& c : res.checks) {
        py::dict d;
        d["name"] = c.name;
        d["passed"] = c.passed;
        d["detail"] = c.detail;
        checks.append(d);
    }
    py::dict out;
    out["suite"] = res.suite;
    out["passed"] = res.passed();
    out["first_failure"] = res.first_failure();
    out["checks"] = checks;
    out["report"] = res.table.to_csv();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "dyadic harmonic analysis on finite grids";
    m.attr("__version__") = "0.1.0";

    py::class_<GridGeometry>(m, "Geometry")
        .def(py::init<int, int, int>(), py::arg("n"), py::arg("jmin"), py::arg("J"))
        .def_property_readonly("n", &GridGeometry::dim)
        .def_property_readonly("jmin", &GridGeometry::level_min)
        .def_property_readonly("J", &GridGeometry::level_max)
        .def_property_readonly("cell_count", &GridGeometry::cell_count)
        .def("cube_count", &GridGeometry::cube_count, py::arg("level"))
        .def("measure", &GridGeometry::measure, py::arg("level"))
        .def(py::self == py::self)
        .def("__repr__", [](const GridGeometry& g) {
            std::ostringstream os;
            os << "Geometry(n=" << g.dim() << ", jmin=" << g.level_min()
               << ", J=" << g.level_max() << ")";
            return os.str();
        });

    py::class_<GridFunction>(m, "Function")
        .def(py::init(&make_function), py::arg("geometry"), py::arg("values"))
        .def_property_readonly("geometry", &GridFunction::geometry)
        .def_property_readonly("values",
                               [](const GridFunction& f) { return to_array(f.values()); })
        .def("__len__", &GridFunction::size)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def("__mul__", [](const GridFunction& f, double s) { return s * f; })
        .def("__rmul__", [](const GridFunction& f, double s) { return s * f; });

    py::class_<HaarCoefficients>(m, "Coefficients")
        .def_property_readonly("geometry", &HaarCoefficients::geometry)
        .def_property_readonly("base_mean",
                               [](const HaarCoefficients& c) { return c.base_mean(); })
        .def("at",
             [](const HaarCoefficients& c, int level, index_t flat, unsigned pattern) {
                 return c.at(level, flat, pattern);
             },
             py::arg("level"), py::arg("index"), py::arg("pattern"))
        .def_property_readonly("detail",
                               [](const HaarCoefficients& c) { return to_array(c.raw()); });

    // building blocks
    m.def("constant", &constant_function, py::arg("geometry"), py::arg("value"));
    m.def("indicator",
          [](const GridGeometry& g, int level, index_t index) {
              return indicator(g, cube_at(g, level, index));
          },
          py::arg("geometry"), py::arg("level"), py::arg("index"));
    m.def("haar",
          [](const GridGeometry& g, int level, index_t index, unsigned pattern) {
              return haar_function(g, cube_at(g, level, index), pattern);
          },
          py::arg("geometry"), py::arg("level"), py::arg("index"), py::arg("pattern") = 1,
          "L^2-normalized Haar function of the given cube and sign pattern");
    m.def("random_function",
          [](const GridGeometry& g, std::uint64_t seed, double theta, bool mean_zero) {
              SplitMix64 rng(seed);
              return random_function(g, rng, theta, mean_zero);
          },
          py::arg("geometry"), py::arg("seed"), py::arg("theta") = 0.0,
          py::arg("mean_zero") = false,
          "seeded random function with coefficient decay exponent theta");

    // transforms
    m.def("forward", py::overload_cast<const GridFunction&>(&forward_transform),
          py::arg("f"));
    m.def("inverse", py::overload_cast<const HaarCoefficients&>(&inverse_transform),
          py::arg("coefficients"));
    m.def("square_function_total", &square_function_total, py::arg("f"));

    // norms
    m.def("lq_norm", py::overload_cast<const GridFunction&, double>(&lq_norm),
          py::arg("f"), py::arg("q"));
    m.def("morrey_norm",
          [](const GridFunction& f, double p, double q) {
              return morrey_norm(f, SpaceParams{p, q});
          },
          py::arg("f"), py::arg("p"), py::arg("q"));
    m.def("bmo_norm", &bmo_norm, py::arg("a"));
    m.def("block_bounds",
          [](const GridFunction& f, double p, double q) {
              DualityGapReport r = duality_gap_report(f, SpaceParams{p, q});
              py::dict d;
              d["upper"] = r.upper;
              d["lower"] = r.lower;
              d["gap"] = r.gap;
              d["upper_converged"] = r.upper_converged;
              return d;
          },
          py::arg("f"), py::arg("p"), py::arg("q"),
          "two-sided bracket for the block-space norm");

    // operators
    m.def("fractional_integral",
          py::overload_cast<const GridFunction&, double>(&fractional_integral),
          py::arg("f"), py::arg("alpha"));
    m.def("paraproduct",
          py::overload_cast<const GridFunction&, const GridFunction&, bool>(&paraproduct),
          py::arg("a"), py::arg("f"), py::arg("normalized") = true);
    m.def("commutator", &commutator_direct, py::arg("a"), py::arg("f"), py::arg("alpha"),
          "[a, I_alpha] f computed directly");
    m.def("commutator_tail_high", &commutator_tail_high,
          py::arg("a"), py::arg("f"), py::arg("alpha"), py::arg("L"));
    m.def("commutator_tail_low", &commutator_tail_low,
          py::arg("a"), py::arg("f"), py::arg("alpha"), py::arg("L"));
    m.def("vmo_distance", &vmo_distance, py::arg("a"), py::arg("L"),
          "BMO distance from a to its scale-L truncation");

    // files
    m.def("read_function", &io::read_function_file, py::arg("path"));
    m.def("write_function", &io::write_function_file, py::arg("path"), py::arg("f"));
    m.def("read_coefficients", &io::read_coefficient_file, py::arg("path"));
    m.def("write_coefficients", &io::write_coefficient_file, py::arg("path"),
          py::arg("coefficients"));

    // verification suites
    m.def("suite_names", &suite_names);
    m.def("verify", &verify_suite, py::arg("suite"), py::arg("n") = 1,
          py::arg("jmin") = 0, py::arg("J") = 8, py::arg("Jlow") = -1,
          py::arg("p") = 4.0, py::arg("q") = 2.0, py::arg("alpha") = 0.125,
          py::arg("seed") = 42, py::arg("ensemble") = 100, py::arg("theta") = 0.0,
          "run one verification suite; Jlow=-1 picks max(jmin+1, J/2)");
}
