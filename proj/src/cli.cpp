// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#include "beamflow/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "beamflow/array_factor.hpp"
#include "beamflow/dynamics.hpp"
#include "beamflow/gradcheck.hpp"
#include "beamflow/io.hpp"
#include "beamflow/pattern.hpp"
#include "beamflow/reference.hpp"
#include "beamflow/scenario.hpp"

namespace beamflow::cli
{

namespace fs = std::filesystem;

namespace
{

// Accepts metres, "half-wavelength", or "<x>lambda".
double parse_spacing(const std::string &text, double wavelength)
{
    if (text == "half-wavelength")
        return 0.5 * wavelength;
    if (text.size() > 6 && text.ends_with("lambda"))
        return parse_number(text.substr(0, text.size() - 6)) * wavelength;
    return parse_number(text);
}

PatternMode parse_pattern_mode(const std::string &text)
{
    if (text == "far-field")
        return PatternMode::far_field;
    if (text == "channel-aware")
        return PatternMode::channel_aware;
    throw ParseError("unknown mode '" + text + "'");
}

std::optional<std::uint64_t> env_seed()
{
    const char *v = std::getenv("BEAMFLOW_SEED");
    if (!v || !*v)
        return std::nullopt;
    double d = parse_number(v);
    if (d < 0 || d != std::floor(d))
        throw ParseError("BEAMFLOW_SEED must be a non-negative integer");
    return static_cast<std::uint64_t>(d);
}

// --seed beats BEAMFLOW_SEED beats the scenario file.
Scenario obtain_scenario(const std::string &path, std::optional<std::uint64_t> cli_seed)
{
    auto seed = cli_seed ? cli_seed : env_seed();
    if (path.empty())
        return reference_scenario(seed.value_or(42));
    return load_scenario(path, seed);
}

void write_file(const fs::path &path, bool force, const std::function<void(std::ostream &)> &body)
{
    if (fs::exists(path) && !force)
        throw IoError(path.string() + " exists (use --force to overwrite)");
    std::ostringstream buffer;
    body(buffer);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << buffer.str();
    if (!out)
        throw IoError("write failed for " + path.string());
}

void ensure_directory(const fs::path &dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string());
}

template <typename Read>
auto read_file(const fs::path &path, Read reader)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    try
    {
        return reader(in);
    }
    catch (const ParseError &e)
    {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void report_validation(const ValidationReport &report, std::ostream &err)
{
    for (const auto &w : report.warnings)
        err << "warning: " << w << '\n';
}

struct GenerateArgs
{
    std::size_t esla = 5;
    std::string spacing = "half-wavelength";
    std::string taper = "binomial";
    double phase_gradient = -1.5707963267948966;
    double frequency = 40e6;
    std::string mode = "far-field";
    double path_loss = 2.0;
    std::size_t theta_count = 360;
    std::vector<double> rhos{100.0};
    std::string out;
    bool force = false;
};

int cmd_generate_pattern(const GenerateArgs &a, std::ostream &out)
{
    auto c = PhysicalConstants::from_frequency(a.frequency, a.path_loss);
    DesiredPatternSpec spec;
    spec.positions = make_esla(a.esla, parse_spacing(a.spacing, c.wavelength));
    if (a.taper == "binomial")
        spec.amplitudes = binomial_taper(a.esla);
    else if (a.taper == "uniform")
        spec.amplitudes.assign(a.esla, 1.0);
    else
        throw ParseError("unknown taper '" + a.taper + "'");
    spec.phase_gradient = a.phase_gradient;
    spec.path_loss_exponent = a.path_loss;
    spec.mode = parse_pattern_mode(a.mode);
    auto grid = desired_pattern(spec, make_grid(a.theta_count, a.rhos), c.wave_number,
                                Propagation::default_min_distance(c));
    if (a.out.empty() || a.out == "-")
        write_pattern_csv(out, grid);
    else
        write_file(a.out, a.force, [&](std::ostream &o) { write_pattern_csv(o, grid); });
    return success;
}

struct RunArgs
{
    std::string scenario;
    std::string out;
    std::size_t stride = 10;
    std::optional<std::uint64_t> seed;
    std::optional<double> horizon;
    bool no_trajectory = false;
    bool no_pattern = false;
    bool no_summary = false;
    bool wall_time = false;
    bool force = false;
};

int cmd_run(const RunArgs &a, std::ostream &out, std::ostream &err)
{
    Scenario sc = obtain_scenario(a.scenario, a.seed);
    if (a.horizon)
        sc.horizon = *a.horizon;
    auto report = check_scenario(sc);
    if (!report.ok())
    {
        err << report.to_string();
        return validation_error;
    }
    report_validation(report, err);

    const fs::path dir(a.out);
    ensure_directory(dir);
    // Refuse before doing any work.
    if (!a.force)
        for (const char *name : {"trajectory.csv", "pattern_initial.csv", "pattern_final.csv", "summary.json"})
            if (fs::exists(dir / name))
                throw IoError((dir / name).string() + " exists (use --force to overwrite)");

    const auto start = std::chrono::steady_clock::now();
    Trajectory traj = integrate(sc, {a.stride});
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    auto summary = summarize(traj, sc, wall);

    if (!a.no_trajectory)
        write_file(dir / "trajectory.csv", a.force,
                   [&](std::ostream &o) { write_trajectory_csv(o, trajectory_rows(traj)); });
    if (!a.no_pattern)
    {
        auto initial = achieved_pattern(sc.agents, sc);
        auto final = achieved_pattern(traj.final.agents, sc);
        write_file(dir / "pattern_initial.csv", a.force, [&](std::ostream &o) { write_pattern_csv(o, sc.grid, &initial); });
        write_file(dir / "pattern_final.csv", a.force, [&](std::ostream &o) { write_pattern_csv(o, sc.grid, &final); });
    }
    if (!a.no_summary)
        write_file(dir / "summary.json", a.force,
                   [&](std::ostream &o) { o << to_json(summary, a.wall_time).dump(2) << '\n'; });

    for (const auto &w : traj.warnings)
        err << "warning: " << w << '\n';
    out << "stop: " << traj.stop_reason << "  t = " << traj.final.t << "  slow steps = " << traj.stats.slow_steps
        << "  fast steps = " << traj.stats.fast_steps << '\n'
        << "pattern term: " << summary.initial.pattern_term << " -> " << summary.final.pattern_term << '\n'
        << "wall time: " << wall << " s\n";
    return success;
}

struct CheckArgs
{
    std::string scenario;
    std::size_t trials = 100;
    std::optional<std::uint64_t> seed;
    bool matched = false;
    double inject_fault = 0.0;
};

int cmd_check_gradients(const CheckArgs &a, std::ostream &out, std::ostream &err)
{
    if (a.trials < 1)
        throw ParseError("--trials must be >= 1");
    Scenario sc = obtain_scenario(a.scenario, a.seed);
    auto report = check_scenario(sc);
    if (!report.ok())
    {
        err << report.to_string();
        return validation_error;
    }
    GradientCheckOptions opt;
    opt.trials = a.trials;
    opt.seed = sc.rng_seed;
    opt.matched_targets = a.matched;
    opt.fault_scale = a.inject_fault;
    auto res = check_gradients(sc, opt);
    auto line = [&](const char *name, const GradientKindResult &k) {
        out << (k.pass ? "PASS " : "FAIL ") << name << "  max rel. error = " << k.max_relative_error << '\n';
    };
    line("amplitude", res.amplitude);
    line("phase    ", res.phase);
    line("position ", res.position);
    out << res.trials << " trials, tolerance " << opt.tolerance << '\n';
    return res.pass() ? success : gradient_check_failure;
}

struct PlotArgs
{
    std::string trajectory;
    std::string initial;
    std::string final;
    std::string out;
    std::optional<double> rho;
    bool force = false;
};

int cmd_plot_data(const PlotArgs &a, std::ostream &out)
{
    if (a.trajectory.empty() && (a.initial.empty() || a.final.empty()))
        throw ParseError("plot-data needs --trajectory and/or both --initial and --final");
    const fs::path dir(a.out);

    std::optional<std::vector<TrajectoryRow>> rows;
    std::optional<std::vector<PolarRow>> polar;
    if (!a.trajectory.empty())
    {
        rows = read_file(a.trajectory, [](std::istream &in) { return read_trajectory_csv(in); });
        if (rows->empty())
            throw ParseError("no samples");
    }
    if (!a.initial.empty() && !a.final.empty())
    {
        auto init = read_file(a.initial, [](std::istream &in) { return read_pattern_csv(in); });
        auto fin = read_file(a.final, [](std::istream &in) { return read_pattern_csv(in); });
        polar = polar_rows(init, fin, a.rho);
    }

    ensure_directory(dir);
    if (rows)
    {
        write_file(dir / "evolution.csv", a.force, [&](std::ostream &o) { write_evolution_csv(o, *rows); });
        out << "wrote " << (dir / "evolution.csv").string() << '\n';
    }
    if (polar)
    {
        write_file(dir / "pattern_polar.csv", a.force, [&](std::ostream &o) { write_polar_csv(o, *polar); });
        out << "wrote " << (dir / "pattern_polar.csv").string() << '\n';
    }
    return success;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Two time-scale beam pattern reconstruction with mobile agents", "beamflow"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto *g = app.add_subcommand("generate-pattern", "Write a desired pattern CSV (rho,theta,magnitude)");
    g->add_option("--esla", gen.esla, "Number of equally spaced elements")->check(CLI::PositiveNumber);
    g->add_option("--spacing", gen.spacing, "Element spacing: metres, 'half-wavelength' or '<x>lambda'");
    g->add_option("--taper", gen.taper, "binomial | uniform");
    g->add_option("--phase-gradient", gen.phase_gradient, "Linear phase gradient across elements (rad)");
    g->add_option("--freq", gen.frequency, "Carrier frequency (Hz)")->check(CLI::PositiveNumber);
    g->add_option("--mode", gen.mode, "far-field | channel-aware");
    g->add_option("--path-loss", gen.path_loss, "Path loss exponent (channel-aware mode)");
    g->add_option("--theta-count", gen.theta_count, "Uniform theta samples over [0, 2pi)")->check(CLI::PositiveNumber);
    g->add_option("--rho", gen.rhos, "Ring radii in metres")->delimiter(',');
    g->add_option("--out", gen.out, "Output CSV path ('-' for stdout)");
    g->add_flag("--force", gen.force, "Overwrite an existing file");

    RunArgs runa;
    auto *r = app.add_subcommand("run", "Integrate a scenario and write trajectory/pattern/summary files");
    r->add_option("--scenario", runa.scenario, "Scenario file (default: built-in reference scenario)");
    r->add_option("--out", runa.out, "Output directory")->required();
    r->add_option("--stride", runa.stride, "Snapshot every N slow steps")->check(CLI::PositiveNumber);
    r->add_option("--seed", runa.seed, "Override the scenario seed");
    r->add_option("--horizon", runa.horizon, "Override the integration horizon")->check(CLI::NonNegativeNumber);
    r->add_flag("--no-trajectory", runa.no_trajectory, "Skip trajectory.csv");
    r->add_flag("--no-pattern", runa.no_pattern, "Skip pattern_initial.csv / pattern_final.csv");
    r->add_flag("--no-summary", runa.no_summary, "Skip summary.json");
    r->add_flag("--wall-time", runa.wall_time, "Include wall time in summary.json");
    r->add_flag("--force", runa.force, "Overwrite existing outputs");

    CheckArgs chk;
    auto *c = app.add_subcommand("check-gradients", "Compare analytic gradients with central differences");
    c->add_option("--scenario", chk.scenario, "Scenario file (default: built-in reference scenario)");
    c->add_option("--trials", chk.trials, "Number of randomised states");
    c->add_option("--seed", chk.seed, "Override the scenario seed");
    c->add_flag("--matched", chk.matched, "Set targets to the achieved pattern of each state");
    c->add_option("--inject-fault", chk.inject_fault, "Scale analytic gradients by (1 + x); test fixture")
        ->group("");

    PlotArgs plot;
    auto *p = app.add_subcommand("plot-data", "Emit long-format CSVs for polar and evolution plots");
    p->add_option("--trajectory", plot.trajectory, "trajectory.csv from run");
    p->add_option("--initial", plot.initial, "pattern_initial.csv from run");
    p->add_option("--final", plot.final, "pattern_final.csv from run");
    p->add_option("--rho", plot.rho, "Ring radius to extract (nearest ring)");
    p->add_option("--out", plot.out, "Output directory")->required();
    p->add_flag("--force", plot.force, "Overwrite existing outputs");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try
    {
        app.parse(reversed);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e, out, err);
        return e.get_exit_code() == 0 ? success : validation_error;
    }

    try
    {
        if (g->parsed())
            return cmd_generate_pattern(gen, out);
        if (r->parsed())
            return cmd_run(runa, out, err);
        if (c->parsed())
            return cmd_check_gradients(chk, out, err);
        if (p->parsed())
            return cmd_plot_data(plot, out);
    }
    catch (const IoError &e)
    {
        err << "error: " << e.what() << '\n';
        return io_error;
    }
    catch (const ValidationError &e)
    {
        err << e.what();
        return validation_error;
    }
    catch (const std::invalid_argument &e)
    {
        err << "error: " << e.what() << '\n';
        return validation_error;
    }
    catch (const ParseError &e)
    {
        err << "error: " << e.what() << '\n';
        return validation_error;
    }
    return validation_error;
}

} // namespace beamflow::cli
