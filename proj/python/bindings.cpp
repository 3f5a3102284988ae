#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lrq/analysis.hpp"
#include "lrq/config.hpp"
#include "lrq/ed_oracle.hpp"
#include "lrq/errors.hpp"
#include "lrq/model.hpp"
#include "lrq/pipeline.hpp"
#include "lrq/runner.hpp"

namespace py = pybind11;
using namespace lrq;

namespace {

py::dict verdict_dict(const ScalingVerdict& v) {
    py::dict d;
    d["model"] = to_string(v.model);
    d["eta"] = v.eta;
    d["xi"] = v.xi;
    d["r2_alg"] = v.r2_alg;
    d["r2_exp"] = v.r2_exp;
    d["margin"] = v.margin;
    d["fit_window"] = v.fit_window;
    d["points_used"] = v.points_used;
    return d;
}

}  // namespace

PYBIND11_MODULE(_lrquench, m) {
    m.doc() = "Quench dynamics of the long-range extended Ising chain";
    m.attr("__version__") = LRQ_VERSION;

    auto base = py::register_exception<Error>(m, "Error");
    auto invalid = py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());
    (void)invalid;

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<int, double, double>(), py::arg("N"), py::arg("h"), py::arg("alpha"))
        .def_readwrite("N", &ModelParams::N)
        .def_readwrite("h", &ModelParams::h)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def("validate", &ModelParams::validate)
        .def("__repr__", [](const ModelParams& p) {
            std::ostringstream ss;
            ss << "ModelParams(N=" << p.N << ", h=" << p.h << ", alpha=" << p.alpha << ")";
            return ss.str();
        });

    m.def("kac_normalization", &kac_normalization, py::arg("N"), py::arg("alpha"));
    m.def("coupling", &coupling, py::arg("R"), py::arg("params"));
    m.def("momentum_grid", &momentum_grid, py::arg("N"));
    m.def("critical_field_lower", &critical_field_lower, py::arg("params"));

    m.def("ground_energy", [](const ModelParams& p) { return energy(ground_state(p), p); }, py::arg("params"));

    m.def("quench_profile", &quench_profile, py::arg("initial"), py::arg("final"), py::arg("t"),
          py::arg("r_list"), py::arg("workers") = 1, py::arg("average_window") = 0.0, py::arg("samples") = 11,
          py::call_guard<py::gil_scoped_release>(),
          "Mutual information I_R after evolving the initial ground state to time t.");

    m.def(
        "fit_profile",
        [](const Profile& prof, int r_min, double tail_fraction, std::optional<std::pair<int, int>> window) {
            FitOptions o;
            o.r_min = r_min;
            o.tail_fraction = tail_fraction;
            o.window = window;
            return verdict_dict(fit_profile(prof, o));
        },
        py::arg("profile"), py::arg("r_min") = 3, py::arg("tail_fraction") = 0.1, py::arg("window") = py::none());

    m.def(
        "rate_function",
        [](const ModelParams& pi, const ModelParams& pf, double dt, double t_max, int workers) {
            const auto scan = rate_scan({pi, pf, uniform_time_grid(dt, t_max)}, {}, workers);
            py::list cusps;
            for (const auto& c : scan.cusps) {
                py::dict d;
                d["t"] = c.t;
                d["rate"] = c.rate;
                d["prediction_error"] = c.prediction_error;
                cusps.append(d);
            }
            py::dict out;
            out["t"] = scan.series.t;
            out["rate"] = scan.series.rate;
            out["cusps"] = cusps;
            return out;
        },
        py::arg("initial"), py::arg("final"), py::arg("dt") = 0.05, py::arg("t_max") = 20.0, py::arg("workers") = 1);

    m.def(
        "oracle_check",
        [](int N, double hi, double ai, double hf, double af, std::vector<double> times) {
            const auto c = ed::compare_quench(ModelParams(N, hi, ai), ModelParams(N, hf, af), times);
            py::dict d;
            d["energy"] = c.energy_err;
            d["m_z"] = c.mz_err;
            d["correlators"] = c.corr_err;
            d["mutual_information"] = c.mi_err;
            d["rate"] = c.rate_err;
            d["max"] = c.max_err();
            return d;
        },
        py::arg("N"), py::arg("h_initial"), py::arg("alpha_initial"), py::arg("h_final"), py::arg("alpha_final"),
        py::arg("times") = std::vector<double>{0.0, 0.5, 1.0, 5.0});

    m.def(
        "validate_config",
        [](const std::string& path) {
            const auto c = resolve_config(load_config_map(path), path);
            return to_config_text(c);
        },
        py::arg("path"), "Resolves a config file; raises InvalidArgument listing every problem.");

    m.def(
        "run",
        [](const std::string& path, std::optional<std::string> output_dir) {
            auto c = resolve_config(load_config_map(path), path);
            if (output_dir) c.output_dir = *output_dir;
            std::ostringstream log;
            std::string text;
            {
                py::gil_scoped_release release;
                text = run_experiment(c, log).dump();
            }
            return py::module_::import("json").attr("loads")(text);
        },
        py::arg("config"), py::arg("output_dir") = py::none(), "Runs one experiment and returns its summary.");
}
