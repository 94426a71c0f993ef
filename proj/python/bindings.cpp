// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <numbers>
#include <sstream>

#include "beamflow/array_factor.hpp"
#include "beamflow/cli.hpp"
#include "beamflow/dynamics.hpp"
#include "beamflow/gradcheck.hpp"
#include "beamflow/gradients.hpp"
#include "beamflow/io.hpp"
#include "beamflow/objective.hpp"
#include "beamflow/pattern.hpp"
#include "beamflow/reference.hpp"
#include "beamflow/scenario.hpp"

namespace py = pybind11;
using namespace beamflow;

namespace
{

std::vector<AgentState> agents_or_initial(const Scenario &sc, const std::optional<std::vector<AgentState>> &agents)
{
    return agents ? *agents : sc.agents;
}

py::dict gradient_dict(const GradientBundle &g)
{
    std::vector<std::pair<double, double>> pos;
    for (auto p : g.position)
        pos.emplace_back(p.x, p.y);
    py::dict d;
    d["amplitude"] = g.amplitude;
    d["phase"] = g.phase;
    d["position"] = pos;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Two time-scale gradient flows for beam pattern reconstruction with mobile agents";

    auto base_error = py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    (void)base_error;

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<>())
        .def(py::init([](double x, double y) { return Vec2{x, y}; }), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def(py::self == py::self)
        .def("__iter__", [](const Vec2 &v) { return py::iter(py::make_tuple(v.x, v.y)); })
        .def("__repr__", [](const Vec2 &v) {
            std::ostringstream s;
            s << "Vec2(" << v.x << ", " << v.y << ")";
            return s.str();
        });

    py::class_<SymMat2>(m, "SymMat2")
        .def(py::init([](double xx, double xy, double yy) { return SymMat2{xx, xy, yy}; }), py::arg("xx"),
             py::arg("xy"), py::arg("yy"))
        .def_readwrite("xx", &SymMat2::xx)
        .def_readwrite("xy", &SymMat2::xy)
        .def_readwrite("yy", &SymMat2::yy)
        .def("positive_definite", &SymMat2::positive_definite);

    py::class_<PhysicalConstants>(m, "PhysicalConstants")
        .def_static("from_frequency", &PhysicalConstants::from_frequency, py::arg("frequency"),
                    py::arg("path_loss_exponent") = 2.0)
        .def_readonly("frequency", &PhysicalConstants::frequency)
        .def_readonly("wavelength", &PhysicalConstants::wavelength)
        .def_readonly("wave_number", &PhysicalConstants::wave_number)
        .def_readonly("path_loss_exponent", &PhysicalConstants::path_loss_exponent);

    py::class_<AgentState>(m, "Agent")
        .def(py::init([](double amplitude, double phase, Vec2 position, double gain) {
                 AgentState a;
                 a.amplitude = amplitude;
                 a.phase = phase;
                 a.position = position;
                 a.anchor = position;
                 a.gain = gain;
                 return a;
             }),
             py::arg("amplitude") = 1.0, py::arg("phase") = 0.0, py::arg("position") = Vec2{}, py::arg("gain") = 1.0)
        .def_readwrite("amplitude", &AgentState::amplitude)
        .def_readwrite("phase", &AgentState::phase)
        .def_readwrite("gain", &AgentState::gain)
        .def_readwrite("position", &AgentState::position)
        .def_readwrite("anchor", &AgentState::anchor)
        .def_readwrite("motion_aux", &AgentState::motion_aux)
        .def(py::self == py::self);

    py::class_<SamplePoint>(m, "SamplePoint")
        .def(py::init([](double rho, double theta) { return SamplePoint{rho, theta}; }), py::arg("rho"),
             py::arg("theta"))
        .def_readwrite("rho", &SamplePoint::rho)
        .def_readwrite("theta", &SamplePoint::theta);

    py::enum_<Integrator>(m, "Integrator").value("euler", Integrator::euler).value("rk4", Integrator::rk4);
    py::enum_<PatternMode>(m, "PatternMode")
        .value("far_field", PatternMode::far_field)
        .value("channel_aware", PatternMode::channel_aware);

    py::class_<Scenario>(m, "Scenario")
        .def_readwrite("constants", &Scenario::constants)
        .def_readwrite("agents", &Scenario::agents)
        .def_readwrite("epsilon", &Scenario::epsilon)
        .def_readwrite("fast_step", &Scenario::fast_step)
        .def_readwrite("slow_step", &Scenario::slow_step)
        .def_readwrite("horizon", &Scenario::horizon)
        .def_readwrite("seed", &Scenario::rng_seed)
        .def_readwrite("min_distance", &Scenario::min_distance)
        .def_readwrite("integrator", &Scenario::integrator)
        .def_readwrite("tol_fast", &Scenario::tol_fast)
        .def_readwrite("tol_slow", &Scenario::tol_slow)
        .def_property(
            "points", [](const Scenario &s) { return s.grid.points; },
            [](Scenario &s, std::vector<SamplePoint> p) { s.grid.points = std::move(p); })
        .def_property(
            "desired", [](const Scenario &s) { return s.grid.desired; },
            [](Scenario &s, std::vector<double> f) { s.grid.desired = std::move(f); })
        .def_property(
            "penalties", [](const Scenario &s) { return s.penalties.per_agent; },
            [](Scenario &s, std::vector<SymMat2> p) { s.penalties.per_agent = std::move(p); })
        .def("validate", [](const Scenario &s) { validate_scenario(s); })
        .def("problems", [](const Scenario &s) {
            auto r = check_scenario(s);
            return py::make_tuple(r.errors, r.warnings);
        });

    py::class_<ObjectiveValue>(m, "ObjectiveValue")
        .def_readonly("pattern_term", &ObjectiveValue::pattern_term)
        .def_readonly("motion_term", &ObjectiveValue::motion_term)
        .def_readonly("total", &ObjectiveValue::total);

    py::class_<Snapshot>(m, "Snapshot")
        .def_readonly("t", &Snapshot::t)
        .def_readonly("agents", &Snapshot::agents)
        .def_readonly("objective", &Snapshot::objective);

    py::class_<RunStats>(m, "RunStats")
        .def_readonly("fast_steps", &RunStats::fast_steps)
        .def_readonly("slow_steps", &RunStats::slow_steps)
        .def_readonly("rejected_steps", &RunStats::rejected_steps)
        .def_readonly("descent_failures", &RunStats::descent_failures);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def_readonly("stats", &Trajectory::stats)
        .def_readonly("stop_reason", &Trajectory::stop_reason)
        .def_readonly("warnings", &Trajectory::warnings)
        .def_property_readonly("final_agents", [](const Trajectory &t) { return t.final.agents; })
        .def_property_readonly("final_time", [](const Trajectory &t) { return t.final.t; })
        .def_property_readonly("objective_history", [](const Trajectory &t) {
            std::vector<std::tuple<double, double, double>> out;
            for (const auto &r : t.final.objective_history)
                out.emplace_back(r.t, r.value.pattern_term, r.value.motion_term);
            return out;
        })
        .def_property_readonly("separation", [](const Trajectory &t) {
            std::vector<std::tuple<double, double, double>> out;
            for (const auto &r : t.separation)
                out.emplace_back(r.t, r.fast_norm_start, r.fast_norm_end);
            return out;
        })
        .def("summary", [](const Trajectory &t, const Scenario &sc) {
            return py::module_::import("json").attr("loads")(to_json(summarize(t, sc, 0.0)).dump());
        });

    m.def("reference_scenario", &reference_scenario, py::arg("seed") = 42,
          "Five agents reconstructing a binomial 5-element ESLA pattern");
    m.def(
        "load_scenario",
        [](const std::filesystem::path &path, std::optional<std::uint64_t> seed) { return load_scenario(path, seed); },
        py::arg("path"), py::arg("seed") = py::none());
    m.def(
        "parse_scenario",
        [](const std::string &text, std::optional<std::uint64_t> seed) {
            std::istringstream in(text);
            return parse_scenario(in, {}, seed);
        },
        py::arg("text"), py::arg("seed") = py::none());

    m.def(
        "array_factor",
        [](const std::vector<AgentState> &agents, SamplePoint p, double frequency, double path_loss_exponent,
           std::optional<double> min_distance) {
            auto c = PhysicalConstants::from_frequency(frequency, path_loss_exponent);
            return af_complex(agents, p, {c, min_distance.value_or(Propagation::default_min_distance(c))});
        },
        py::arg("agents"), py::arg("point"), py::arg("frequency") = 40e6, py::arg("path_loss_exponent") = 2.0,
        py::arg("min_distance") = py::none(), "Complex array factor at one sample point");

    m.def(
        "achieved_pattern",
        [](const Scenario &sc, std::optional<std::vector<AgentState>> agents) {
            return achieved_pattern(agents_or_initial(sc, agents), sc);
        },
        py::arg("scenario"), py::arg("agents") = py::none());
    m.def(
        "pattern_term",
        [](const Scenario &sc, std::optional<std::vector<AgentState>> agents) {
            return pattern_term(agents_or_initial(sc, agents), sc.grid, sc.propagation());
        },
        py::arg("scenario"), py::arg("agents") = py::none());
    m.def(
        "pattern_gradient",
        [](const Scenario &sc, std::optional<std::vector<AgentState>> agents) {
            return gradient_dict(pattern_gradient(agents_or_initial(sc, agents), sc.grid, sc.propagation()));
        },
        py::arg("scenario"), py::arg("agents") = py::none());

    m.def(
        "desired_pattern",
        [](std::size_t elements, double spacing, const std::string &taper, double phase_gradient, double frequency,
           PatternMode mode, double path_loss_exponent, std::size_t theta_count, std::vector<double> rhos) {
            auto c = PhysicalConstants::from_frequency(frequency, path_loss_exponent);
            DesiredPatternSpec spec;
            spec.positions = make_esla(elements, spacing);
            if (taper == "binomial")
                spec.amplitudes = binomial_taper(elements);
            else if (taper == "uniform")
                spec.amplitudes.assign(elements, 1.0);
            else
                throw std::invalid_argument("unknown taper '" + taper + "'");
            spec.phase_gradient = phase_gradient;
            spec.path_loss_exponent = path_loss_exponent;
            spec.mode = mode;
            auto g = desired_pattern(spec, make_grid(theta_count, std::move(rhos)), c.wave_number,
                                     Propagation::default_min_distance(c));
            return py::make_tuple(g.points, g.desired);
        },
        py::arg("elements") = 5, py::arg("spacing") = 0.5 * speed_of_light / 40e6, py::arg("taper") = "binomial",
        py::arg("phase_gradient") = -0.5 * std::numbers::pi, py::arg("frequency") = 40e6,
        py::arg("mode") = PatternMode::far_field, py::arg("path_loss_exponent") = 2.0, py::arg("theta_count") = 360,
        py::arg("rhos") = std::vector<double>{100.0}, "Returns (points, magnitudes) for an ESLA target");

    m.def(
        "integrate",
        [](const Scenario &sc, std::size_t stride) {
            validate_scenario(sc);
            py::gil_scoped_release release;
            return integrate(sc, {stride});
        },
        py::arg("scenario"), py::arg("stride") = 1);

    m.def(
        "check_gradients",
        [](const Scenario &sc, std::size_t trials, bool matched, double tolerance) {
            GradientCheckOptions opt;
            opt.trials = trials;
            opt.seed = sc.rng_seed;
            opt.matched_targets = matched;
            opt.tolerance = tolerance;
            auto r = check_gradients(sc, opt);
            py::dict d;
            d["amplitude"] = r.amplitude.max_relative_error;
            d["phase"] = r.phase.max_relative_error;
            d["position"] = r.position.max_relative_error;
            d["pass"] = r.pass();
            return d;
        },
        py::arg("scenario"), py::arg("trials") = 100, py::arg("matched") = false, py::arg("tolerance") = 1e-5);

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out, err;
            int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line interface in-process; returns (exit_code, stdout, stderr)");
}
