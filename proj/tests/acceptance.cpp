// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------
//
// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

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

using namespace beamflow;
namespace fs = std::filesystem;

namespace
{

constexpr double pi = std::numbers::pi;

struct Outcome
{
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x)
{
    std::ostringstream o;
    o.precision(3);
    o << x;
    return o.str();
}

fs::path scratch_dir(const std::string &name)
{
    auto dir = fs::temp_directory_path() / ("beamflow_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path &p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream o;
    o << in.rdbuf();
    return o.str();
}

// 1. analytic gradients vs central differences
Outcome gradient_correctness()
{
    auto t0 = Clock::now();
    Scenario sc = reference_scenario(42);
    GradientCheckOptions opt;
    opt.trials = 100;
    opt.error_floor = 1e-8;
    auto r = check_gradients(sc, opt);
    double elapsed = seconds_since(t0);
    bool shape = sc.agents.size() == 5 && sc.grid.size() == 36 * 3 && sc.constants.frequency == 40e6;
    return {r.pass() && shape && elapsed < 10.0,
            "max rel. error a=" + fmt(r.amplitude.max_relative_error) + " alpha=" + fmt(r.phase.max_relative_error) +
                " r=" + fmt(r.position.max_relative_error) + ", " + fmt(elapsed) + " s"};
}

// 2. u/v decomposition vs direct complex exponentials
Outcome forward_model_equivalence()
{
    auto t0 = Clock::now();
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto c = PhysicalConstants::from_frequency(40e6, 2.0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial)
    {
        Propagation prop{PhysicalConstants::from_frequency(40e6, 3.0 * unit(rng)), 1e-3 * c.wavelength};
        const std::size_t s = 1 + static_cast<std::size_t>(unit(rng) * 8);
        std::vector<AgentState> agents(s);
        for (auto &ag : agents)
        {
            ag.amplitude = 2.0 * unit(rng);
            ag.phase = 4.0 * pi * (unit(rng) - 0.5);
            ag.gain = 0.1 + 2.0 * unit(rng);
            ag.position = {20.0 * (unit(rng) - 0.5), 20.0 * (unit(rng) - 0.5)};
        }
        SamplePoint p{0.5 + 50.0 * unit(rng), two_pi * unit(rng)};
        const double k = prop.constants.wave_number;
        const double mu = prop.constants.path_loss_exponent;

        std::complex<double> direct{0.0, 0.0};
        for (const auto &ag : agents)
        {
            const double dx = p.rho * std::cos(p.theta) - ag.position.x;
            const double dy = p.rho * std::sin(p.theta) - ag.position.y;
            const double d = std::max(std::sqrt(dx * dx + dy * dy), prop.min_distance);
            const double phase =
                ag.phase + k * ag.position.x * std::cos(p.theta) + k * ag.position.y * std::sin(p.theta) + k * d;
            direct += ag.amplitude * ag.gain * std::pow(d, -mu / 2.0) * std::exp(std::complex<double>(0.0, phase));
        }
        const double via_uv = af_magnitude(amplitudes_of(agents), phasor_basis(agents, p, prop));
        const double ref = std::abs(direct);
        worst = std::max(worst, std::abs(via_uv - ref) / std::max(ref, 1e-300));
    }
    double elapsed = seconds_since(t0);
    return {worst <= 1e-12 && elapsed < 1.0, "worst rel. diff " + fmt(worst) + ", " + fmt(elapsed) + " s"};
}

// 3. far-field reference pattern: main lobes at 60 and 300 degrees, peak 16
Outcome reference_pattern()
{
    const auto c = PhysicalConstants::from_frequency(40e6, 2.0);
    auto spec = reference_pattern_spec(c, PatternMode::far_field);
    auto grid = desired_pattern(spec, make_grid(720, {100.0}), c.wave_number, Propagation::default_min_distance(c));
    std::size_t best_upper = 0, best_lower = 0;
    double peak = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const double th = grid.points[i].theta;
        const double f = grid.desired[i];
        peak = std::max(peak, f);
        if (th <= pi && f > grid.desired[best_upper])
            best_upper = i;
        if (th > pi && (best_lower == 0 || f > grid.desired[best_lower]))
            best_lower = i;
    }
    const double deg = 180.0 / pi;
    const double up = grid.points[best_upper].theta * deg;
    const double lo = grid.points[best_lower].theta * deg;
    bool ok = std::abs(up - 60.0) <= 0.5 && std::abs(lo - 300.0) <= 0.5 && std::abs(peak - 16.0) <= 1e-9;
    return {ok, "argmax " + fmt(up) + " / " + fmt(lo) + " deg, peak " + std::to_string(peak)};
}

// 4. fast flow alone with positions frozen
Outcome fast_flow_descent()
{
    auto t0 = Clock::now();
    Scenario sc = reference_scenario(42);
    FlowState st = FlowState::initial(sc);
    FastPatternModel model(st.agents, sc.grid, sc.propagation());
    const double start = pattern_term(st.agents, sc.grid, sc.propagation());
    double prev = start;
    double worst_rise = -INFINITY;
    for (int j = 0; j < 10000; ++j)
    {
        fast_step(st, sc, model);
        double now = pattern_term(st.agents, sc.grid, sc.propagation());
        worst_rise = std::max(worst_rise, now - prev);
        prev = now;
    }
    double elapsed = seconds_since(t0);
    double reduction = 1.0 - prev / start;
    bool ok = worst_rise <= 1e-12 && reduction >= 0.9 && elapsed < 30.0;
    return {ok, "reduction " + fmt(100.0 * reduction) + "%, worst per-step change " + fmt(worst_rise) + ", " +
                    fmt(elapsed) + " s"};
}

struct FullRun
{
    Scenario scenario;
    Trajectory traj;
    double elapsed = 0.0;
};

// 5. two time-scale reconstruction
Outcome reconstruction(const FullRun &run)
{
    const auto &sc = run.scenario;
    const double j0 = pattern_term(sc.agents, sc.grid, sc.propagation());
    const double j1 = pattern_term(run.traj.final.agents, sc.grid, sc.propagation());
    auto achieved = achieved_pattern(run.traj.final.agents, sc);
    double sq = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < sc.grid.size(); ++i)
    {
        sq += (achieved[i] - sc.grid.desired[i]) * (achieved[i] - sc.grid.desired[i]);
        peak = std::max(peak, sc.grid.desired[i]);
    }
    const double rms = std::sqrt(sq / static_cast<double>(sc.grid.size()));
    bool ok = j1 < 0.05 * j0 && rms < 0.05 * peak && run.elapsed < 120.0;
    return {ok, "J/J0 = " + fmt(j1 / j0) + ", rms/peak = " + fmt(rms / peak) + ", " + fmt(run.elapsed) + " s"};
}

// 6. fast gradient collapses within every fast sub-sequence
Outcome time_scale_separation(const FullRun &run)
{
    double worst = 0.0;
    std::size_t violations = 0;
    for (const auto &rec : run.traj.separation)
    {
        if (rec.fast_norm_end < run.scenario.tol_fast)
            continue;
        const double ratio = rec.fast_norm_end / rec.fast_norm_start;
        worst = std::max(worst, ratio);
        if (!(ratio <= 1e-3))
            ++violations;
    }
    return {violations == 0 && !run.traj.separation.empty(),
            "worst end/start ratio " + fmt(worst) + ", " + std::to_string(violations) + " of " +
                std::to_string(run.traj.separation.size()) + " slow steps above 1e-3"};
}

// 7. two CLI executions produce identical files
Outcome determinism()
{
    auto dir = scratch_dir("determinism");
    std::ostringstream out, err;
    int rc1 = cli::run({"run", "--out", (dir / "a").string(), "--seed", "42"}, out, err);
    int rc2 = cli::run({"run", "--out", (dir / "b").string(), "--seed", "42"}, out, err);
    bool ok = rc1 == 0 && rc2 == 0;
    for (const char *name : {"trajectory.csv", "summary.json"})
    {
        auto x = slurp(dir / "a" / name);
        auto y = slurp(dir / "b" / name);
        ok = ok && !x.empty() && x == y;
    }
    fs::remove_all(dir);
    return {ok, "trajectory.csv and summary.json compared byte for byte"};
}

// 8. the trivial examples
class TrivialSuite
{
  public:
    void check(const std::string &name, bool ok)
    {
        ++total_;
        if (!ok)
            failed_.push_back(name);
    }
    Outcome outcome() const
    {
        std::string detail = std::to_string(total_ - failed_.size()) + "/" + std::to_string(total_) + " cases";
        for (const auto &f : failed_)
            detail += "; failed: " + f;
        return {failed_.empty(), detail};
    }

  private:
    std::size_t total_ = 0;
    std::vector<std::string> failed_;
};

bool near(double x, double y, double tol) { return std::abs(x - y) <= tol; }

Propagation unit_prop(double mu = 0.0, double k = 1.0)
{
    PhysicalConstants c;
    c.wave_number = k;
    c.wavelength = two_pi / k;
    c.frequency = 299792458.0 / c.wavelength;
    c.path_loss_exponent = mu;
    return {c, 1e-3};
}

AgentState agent_at(double x, double y, double a = 1.0, double alpha = 0.0)
{
    AgentState ag;
    ag.amplitude = a;
    ag.phase = alpha;
    ag.position = {x, y};
    ag.anchor = ag.position;
    return ag;
}

Scenario matched_scenario()
{
    Scenario sc = reference_scenario(42);
    sc.grid.desired = achieved_pattern(sc.agents, sc);
    return sc;
}

bool all_zero(const std::vector<double> &v)
{
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

Outcome trivial_cases()
{
    TrivialSuite t;

    // validation
    {
        Scenario sc = reference_scenario(42);
        for (auto &S : sc.penalties.per_agent)
            S = SymMat2::identity();
        t.check("identity penalty accepted", check_scenario(sc).ok());
        sc.penalties.per_agent[0] = {1.0, 0.0, -1.0};
        auto rep = check_scenario(sc);
        t.check("diag(1,-1) penalty rejected",
                !rep.ok() && rep.to_string().find("penalty not positive definite") != std::string::npos);
    }
    // objective
    {
        Scenario sc = matched_scenario();
        t.check("matched pattern gives zero pattern term", pattern_term(sc.agents, sc.grid, sc.propagation()) == 0.0);
        auto prop = unit_prop(0.0);
        std::vector<AgentState> one{agent_at(0.0, 0.0)};
        t.check("single unit agent, f=0 gives 0.5", near(phi_i(one, {2.0, 0.3}, 0.0, prop), 0.5, 1e-15));
        auto obj = objective(sc.agents, sc, motion_integrand(sc.agents, sc.penalties));
        t.check("anchors and matched pattern give J=0", obj.total == 0.0);
        Scenario mis = reference_scenario(42);
        auto obj2 = objective(mis.agents, mis, 0.0);
        t.check("anchors and mismatched pattern give J=pattern term",
                motion_integrand(mis.agents, mis.penalties) == 0.0 && obj2.total == obj2.pattern_term &&
                    obj2.pattern_term > 0.0);
    }
    // distance and phase
    {
        t.check("distance origin to unit circle", near(distance({0, 0}, 1.0, 0.0, 1e-3), 1.0, 1e-15));
        t.check("3-4-5 triangle", near(distance({3, 4}, 1e-3, 0.3, 1e-3), 5.0, 1e-3));
        t.check("coincident point clamps", distance({1, 0}, 1.0, 0.0, 1e-3) == 1e-3);
        t.check("origin element phase k rho", near(zeta({0, 0}, 3.0, 1.1, 2.0, 1e-3), 6.0, 1e-12));
        t.check("collinear phase 2pi", near(zeta({1, 0}, 2.0, 0.0, pi, 1e-3), 2.0 * pi, 1e-12));
    }
    // phasor basis and magnitude
    {
        auto prop = unit_prop(0.0, 1.0);
        std::vector<AgentState> one{agent_at(0.0, 0.0, 0.7, 0.0)};
        auto ff = far_field_basis(one, 0.3, 1.0);
        t.check("zero phase gives u=1, v=0", ff.u[0] == 1.0 && ff.v[0] == 0.0);
        one[0].phase = pi / 2.0;
        ff = far_field_basis(one, 0.3, 1.0);
        t.check("quarter turn gives u=0, v=1", near(ff.u[0], 0.0, 1e-15) && near(ff.v[0], 1.0, 1e-15));

        std::vector<AgentState> unit{agent_at(0.4, -0.2, 1.0, 0.8)};
        t.check("unit phasor magnitude 1",
                near(af_magnitude(amplitudes_of(unit), phasor_basis(unit, {5.0, 1.0}, prop)), 1.0, 1e-15));
        std::vector<AgentState> pair{agent_at(0.4, -0.2, 1.0, 0.8), agent_at(0.4, -0.2, 1.0, 0.8 + pi)};
        t.check("destructive interference null",
                af_magnitude(amplitudes_of(pair), phasor_basis(pair, {5.0, 1.0}, prop)) <= 1e-12);

        auto prop2 = unit_prop(2.0, 1.0);
        // origin element, rho = 2pi / k: alpha + zeta = 2pi
        std::vector<AgentState> real{agent_at(0.0, 0.0, 1.5, 0.0)};
        real[0].gain = 0.8;
        auto z = af_complex(real, {two_pi, 0.3}, prop2);
        t.check("real phasor", near(z.real(), 1.5 * 0.8 / two_pi, 1e-12) && near(z.imag(), 0.0, 1e-12));

        std::vector<AgentState> many{agent_at(1, 2, 0.5, 0.1), agent_at(-3, 1, 1.2, 2.0), agent_at(0, -2, 0.9, 4.0)};
        auto z0 = af_complex(many, {7.0, 0.4}, prop2);
        for (auto &ag : many)
            ag.phase += 0.9;
        auto z1 = af_complex(many, {7.0, 0.4}, prop2);
        auto rotated = z0 * std::polar(1.0, 0.9);
        t.check("global phase shift rotates AF",
                std::abs(z1 - rotated) <= 1e-12 * std::abs(z0) && near(std::abs(z1), std::abs(z0), 1e-12 * std::abs(z0)));
    }
    // gradients
    {
        Scenario sc = matched_scenario();
        auto g = pattern_gradient(sc.agents, sc.grid, sc.propagation());
        t.check("zero residual gives zero amplitude gradient", all_zero(g.amplitude));
        t.check("zero residual gives zero phase gradient", all_zero(g.phase));
        t.check("zero residual gives zero position gradient",
                std::all_of(g.position.begin(), g.position.end(), [](Vec2 v) { return v.x == 0.0 && v.y == 0.0; }));

        auto prop = unit_prop(0.0);
        std::vector<AgentState> one{agent_at(0.3, 0.1, 1.0, 0.4)};
        auto basis = phasor_basis(one, {4.0, 0.7}, prop);
        auto ga = grad_amplitude(amplitudes_of(one), basis, 0.0);
        t.check("scalar quadratic amplitude gradient", near(ga[0], 1.0, 1e-15));
        one[0].amplitude = 1.7;
        auto gp = grad_phase(amplitudes_of(one), phasor_basis(one, {4.0, 0.7}, prop), 0.3);
        t.check("single agent phase gradient is zero", gp[0] == 0.0);

        // agent on the x axis beyond the sample point, sin(alpha + zeta) = 0
        auto prop1 = unit_prop(0.0, 1.0);
        AgentState ag = agent_at(5.0, 0.0);
        const double z = zeta(ag.position, 2.0, 0.0, 1.0, prop1.min_distance);
        ag.phase = -z;
        auto parts = position_partials(ag, {2.0, 0.0}, prop1);
        t.check("both factors zero gives zero x partial", near(parts.du.x, 0.0, 1e-12));

        auto quad = [](std::span<const double> x) { return 0.5 * x[0] * x[0]; };
        std::vector<double> x{3.0};
        t.check("fd of quadratic", near(fd_gradient(quad, x, 1e-6)[0], 3.0, 1e-9));
        auto flat = [](std::span<const double>) { return 2.5; };
        t.check("fd of constant", near(fd_gradient(flat, x, 1e-6)[0], 0.0, 1e-9));
    }
    // dynamics
    {
        Scenario sc = matched_scenario();
        FlowState st = FlowState::initial(sc);
        auto before = st.agents;
        fast_step(st, sc);
        bool same = true;
        for (std::size_t m = 0; m < before.size(); ++m)
            same = same && st.agents[m].amplitude == before[m].amplitude && st.agents[m].phase == before[m].phase;
        t.check("zero gradient fast step is a fixed point", same);
        t.check("matched pattern stays at zero", pattern_term(st.agents, sc.grid, sc.propagation()) == 0.0);

        st = FlowState::initial(sc);
        slow_step(st, sc);
        bool still = true;
        for (std::size_t m = 0; m < before.size(); ++m)
            still = still && st.agents[m].position == before[m].position && st.agents[m].motion_aux == Vec2{};
        t.check("anchors with zero gradient are stationary", still);

        Scenario disp = sc;
        disp.grid.desired.assign(disp.grid.size(), 0.0);
        for (auto &ag : disp.agents)
            ag.amplitude = 0.0;  // zero pattern gradient
        disp.penalties.per_agent.assign(disp.agents.size(), SymMat2{2.0, 0.5, 3.0});
        FlowState sd = FlowState::initial(disp);
        const Vec2 delta{0.3, -0.2};
        sd.agents[0].position = sd.agents[0].anchor + delta;
        slow_step(sd, disp);
        const Vec2 expect = -2.0 * disp.slow_step * (disp.penalties.per_agent[0] * delta);
        t.check("displaced agent gets restoring impulse",
                near(sd.agents[0].motion_aux.x, expect.x, 1e-15) && near(sd.agents[0].motion_aux.y, expect.y, 1e-15));

        Scenario opt = sc;
        opt.horizon = 0.05;
        auto traj = integrate(opt);
        bool identical = traj.stop_reason == "converged";
        for (const auto &snap : traj.samples)
            identical = identical && snap.objective.total == 0.0;
        t.check("global minimum at anchors converges with J=0", identical);

        Scenario zero = reference_scenario(42);
        zero.horizon = 0.0;
        auto tz = integrate(zero);
        bool only_initial = tz.samples.size() == 1 && tz.stats.slow_steps == 0;
        for (std::size_t m = 0; m < zero.agents.size(); ++m)
            only_initial = only_initial && tz.final.agents[m].position == zero.agents[m].position &&
                           tz.final.agents[m].amplitude == zero.agents[m].amplitude;
        t.check("horizon 0 keeps only the initial state", only_initial);

        t.check("matched pattern at anchors stops converged",
                stopping_rule(FlowState::initial(sc), sc).reason == "converged");
        Scenario big = reference_scenario(42);
        FlowState at_h = FlowState::initial(big);
        at_h.t = big.horizon;
        t.check("t = horizon stops", stopping_rule(at_h, big).reason == "horizon");
        t.check("generic state continues", !stopping_rule(FlowState::initial(big), big).stop);
    }
    // pattern generation
    {
        auto e1 = make_esla(1, 1.0);
        t.check("ESLA n=1", e1.size() == 1 && e1[0] == Vec2{0.0, 0.0});
        auto e2 = make_esla(2, 1.0);
        t.check("ESLA n=2", e2.size() == 2 && e2[0] == Vec2{-0.5, 0.0} && e2[1] == Vec2{0.5, 0.0});
        t.check("taper n=1", binomial_taper(1) == std::vector<double>{1.0});
        t.check("taper n=2", binomial_taper(2) == std::vector<double>({1.0, 1.0}));
        t.check("taper n=5", binomial_taper(5) == std::vector<double>({1.0, 4.0, 6.0, 4.0, 1.0}));

        DesiredPatternSpec mono;
        mono.positions = {{0.0, 0.0}};
        mono.amplitudes = {1.0};
        mono.mode = PatternMode::channel_aware;
        mono.path_loss_exponent = 1.6;
        bool iso = true;
        for (double rho : {0.5, 2.0, 9.0})
            for (double th : {0.0, 1.0, 4.0})
                iso = iso && near(desired_magnitude(mono, {rho, th}, 0.8, 1e-3), std::pow(rho, -0.8), 1e-12);
        t.check("isotropic monopole", iso);

        auto g4 = make_grid(4, {1.0});
        t.check("theta_count 4", g4.thetas == std::vector<double>({0.0, pi / 2.0, pi, 3.0 * pi / 2.0}));
        t.check("theta_count 1", make_grid(1, {1.0}).thetas == std::vector<double>{0.0});
        t.check("360 x 2 grid", make_grid(360, {10.0, 100.0}).size() == 720);
    }
    // CLI
    {
        auto dir = scratch_dir("trivial_cli");
        std::ostringstream out, err;
        auto p1 = (dir / "single.csv").string();
        int rc = cli::run({"generate-pattern", "--esla", "1", "--out", p1}, out, err);
        std::ifstream in(p1);
        auto table = read_pattern_csv(in);
        bool constant = rc == 0 && !table.magnitude.empty() &&
                        std::all_of(table.magnitude.begin(), table.magnitude.end(),
                                    [&](double f) { return f == table.magnitude.front(); });
        t.check("single element far-field pattern is constant", constant);

        auto p2 = (dir / "again.csv").string();
        auto p3 = (dir / "again2.csv").string();
        cli::run({"generate-pattern", "--esla", "5", "--out", p2}, out, err);
        cli::run({"generate-pattern", "--esla", "5", "--out", p3}, out, err);
        t.check("regenerated pattern is byte identical", slurp(p2) == slurp(p3) && !slurp(p2).empty());

        rc = cli::run({"run", "--out", (dir / "h0").string(), "--horizon", "0"}, out, err);
        std::ifstream tin(dir / "h0" / "trajectory.csv");
        auto rows = read_trajectory_csv(tin);
        Scenario ref = reference_scenario(42);
        bool one_snapshot = rc == 0 && rows.size() == ref.agents.size();
        for (std::size_t m = 0; one_snapshot && m < rows.size(); ++m)
            one_snapshot = rows[m].position == ref.agents[m].position && rows[m].amplitude == ref.agents[m].amplitude;
        t.check("run with horizon 0 writes one snapshot", one_snapshot);

        t.check("matched single trial passes", cli::run({"check-gradients", "--trials", "1", "--matched"}, out, err) == 0);
        t.check("corrupted gradient fails",
                cli::run({"check-gradients", "--trials", "1", "--inject-fault", "0.01"}, out, err) ==
                    cli::gradient_check_failure);

        rc = cli::run({"run", "--out", (dir / "short").string(), "--horizon", "0.05", "--stride", "1"}, out, err);
        rc += cli::run({"plot-data", "--trajectory", (dir / "short" / "trajectory.csv").string(), "--out",
                        (dir / "plots").string()},
                       out, err);
        std::ifstream ev(dir / "plots" / "evolution.csv");
        std::string line;
        std::getline(ev, line);
        std::vector<std::size_t> per_agent(ref.agents.size(), 0);
        while (std::getline(ev, line))
        {
            auto comma = line.find(',');
            auto agent = std::stoul(line.substr(comma + 1));
            if (agent < per_agent.size())
                ++per_agent[agent];
        }
        t.check("evolution series have equal length",
                rc == 0 && per_agent.front() > 1 &&
                    std::all_of(per_agent.begin(), per_agent.end(), [&](auto n) { return n == per_agent.front(); }));

        {
            std::ofstream empty(dir / "empty.csv");
            empty << "t,m,a_m,alpha_m,x_m,y_m,vx_m,vy_m\n";
        }
        std::ostringstream e1;
        rc = cli::run({"plot-data", "--trajectory", (dir / "empty.csv").string(), "--out", (dir / "p2").string()},
                      out, e1);
        t.check("empty trajectory reports no samples", rc != 0 && e1.str().find("no samples") != std::string::npos);

        cli::run({"generate-pattern", "--theta-count", "36", "--out", (dir / "g36.csv").string()}, out, err);
        cli::run({"generate-pattern", "--theta-count", "72", "--out", (dir / "g72.csv").string()}, out, err);
        std::ostringstream e2;
        rc = cli::run({"plot-data", "--initial", (dir / "g36.csv").string(), "--final", (dir / "g72.csv").string(),
                       "--out", (dir / "p3").string()},
                      out, e2);
        t.check("mismatched grids report grid mismatch",
                rc != 0 && e2.str().find("grid mismatch") != std::string::npos);
        fs::remove_all(dir);
    }
    return t.outcome();
}

} // namespace

int main()
{
    int failures = 0;
    auto report = [&](int id, const char *name, const Outcome &o) {
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << name << "  (" << o.detail << ")"
                  << std::endl;
        if (!o.pass)
            ++failures;
    };

    report(1, "gradient correctness", gradient_correctness());
    report(2, "forward-model equivalence", forward_model_equivalence());
    report(3, "reference pattern", reference_pattern());
    report(4, "fast-flow descent", fast_flow_descent());

    FullRun run;
    run.scenario = reference_scenario(42);
    auto t0 = Clock::now();
    run.traj = integrate(run.scenario);
    run.elapsed = seconds_since(t0);
    report(5, "two time-scale reconstruction", reconstruction(run));
    report(6, "time-scale separation", time_scale_separation(run));
    report(7, "determinism", determinism());
    report(8, "trivial-case suite", trivial_cases());
    return failures == 0 ? 0 : 1;
}
