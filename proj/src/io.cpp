// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#include "beamflow/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string_view>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "beamflow/array_factor.hpp"
#include "beamflow/reference.hpp"

namespace beamflow
{

namespace pt = boost::property_tree;

ParseError::ParseError(const std::string &what, std::size_t row)
    : std::runtime_error(row ? "row " + std::to_string(row) + ": " + what : what), row_(row)
{
}

std::string format_number(double x)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_number(const std::string &text, std::size_t row)
{
    auto first = text.find_first_not_of(" \t\r");
    auto last = text.find_last_not_of(" \t\r");
    if (first == std::string::npos)
        throw ParseError("empty numeric field", row);
    const char *b = text.data() + first;
    const char *e = text.data() + last + 1;
    if (*b == '+')
        ++b;
    double value = 0.0;
    auto res = std::from_chars(b, e, value);
    if (res.ec != std::errc{} || res.ptr != e)
        throw ParseError("malformed number '" + text + "'", row);
    return value;
}

namespace
{

std::vector<std::string> split(const std::string &line, char sep)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep))
        out.push_back(field);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

std::vector<double> parse_list(const std::string &text)
{
    std::string norm = text;
    std::replace(norm.begin(), norm.end(), ',', ' ');
    std::istringstream ss(norm);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok)
        out.push_back(parse_number(tok));
    return out;
}

std::string strip_cr(std::string s)
{
    if (!s.empty() && s.back() == '\r')
        s.pop_back();
    return s;
}

struct CsvBody
{
    std::string header;
    std::vector<std::pair<std::size_t, std::string>> rows;  // (1-based row, line)
};

CsvBody read_csv_body(std::istream &in, std::initializer_list<std::string_view> headers)
{
    CsvBody body;
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("missing header", 1);
    body.header = strip_cr(line);
    if (std::find(headers.begin(), headers.end(), body.header) == headers.end())
        throw ParseError("unexpected header '" + body.header + "'", 1);
    std::size_t row = 1;
    while (std::getline(in, line))
    {
        ++row;
        line = strip_cr(line);
        if (!line.empty())
            body.rows.emplace_back(row, line);
    }
    return body;
}

template <typename T>
T get_or(const pt::ptree &tree, const std::string &key, T fallback)
{
    auto v = tree.get_optional<std::string>(key);
    if (!v)
        return fallback;
    if constexpr (std::is_same_v<T, std::string>)
        return *v;
    else if constexpr (std::is_integral_v<T>)
    {
        double d = parse_number(*v);
        if (d < 0 || d != std::floor(d))
            throw ParseError("key '" + key + "' must be a non-negative integer");
        return static_cast<T>(d);
    }
    else
        return parse_number(*v);
}

PatternMode parse_mode(const std::string &s)
{
    if (s == "far-field")
        return PatternMode::far_field;
    if (s == "channel-aware")
        return PatternMode::channel_aware;
    throw ParseError("unknown target mode '" + s + "'");
}

} // namespace

Scenario parse_scenario(std::istream &in, const std::filesystem::path &base_dir,
                        std::optional<std::uint64_t> seed_override)
{
    // boost's INI reader only knows ';' comments.
    std::ostringstream cleaned;
    std::string line;
    while (std::getline(in, line))
    {
        auto first = line.find_first_not_of(" \t");
        if (first != std::string::npos && line[first] == '#')
            cleaned << '\n';
        else
            cleaned << line << '\n';
    }
    pt::ptree tree;
    try
    {
        std::istringstream src(cleaned.str());
        pt::read_ini(src, tree);
    }
    catch (const pt::ini_parser_error &e)
    {
        throw ParseError(e.message(), e.line());
    }

    const ReferenceParameters ref;
    const auto empty = pt::ptree{};
    const auto &constants = tree.get_child("constants", empty);
    const auto &integration = tree.get_child("integration", empty);
    const auto &agents = tree.get_child("agents", empty);
    const auto &grid = tree.get_child("grid", empty);
    const auto &target = tree.get_child("target", empty);

    Scenario s;
    s.constants = PhysicalConstants::from_frequency(get_or(constants, "frequency", ref.frequency),
                                                    get_or(constants, "path_loss_exponent", ref.path_loss_exponent));
    const double lambda = s.constants.wavelength;

    s.epsilon = get_or(integration, "epsilon", ref.epsilon);
    s.slow_step = get_or(integration, "slow_step", ref.slow_step);
    s.fast_step = get_or(integration, "fast_step", s.epsilon * s.slow_step / 10.0);
    s.horizon = get_or(integration, "horizon", ref.horizon);
    s.rng_seed = seed_override ? *seed_override : get_or<std::uint64_t>(integration, "seed", ref.seed);
    s.min_distance = get_or(integration, "min_distance", Propagation::default_min_distance(s.constants));
    s.tol_fast = get_or(integration, "tol_fast", s.tol_fast);
    s.tol_slow = get_or(integration, "tol_slow", s.tol_slow);
    auto integrator = get_or<std::string>(integration, "integrator", "euler");
    if (integrator == "euler")
        s.integrator = Integrator::euler;
    else if (integrator == "rk4")
        s.integrator = Integrator::rk4;
    else
        throw ParseError("unknown integrator '" + integrator + "'");

    const auto count = get_or<std::size_t>(agents, "count", ref.agents);
    const auto init = get_or<std::string>(agents, "init", "random");
    if (init == "random")
    {
        RandomInit ri;
        ri.count = count;
        ri.side = agents.get_optional<std::string>("init_side")
                      ? get_or(agents, "init_side", 0.0)
                      : get_or(agents, "init_side_wavelengths", ref.init_side_wavelengths) * lambda;
        ri.seed = s.rng_seed;
        auto gm = get_or<std::string>(agents, "gain_mode", "unit");
        if (gm == "unit")
            ri.gains = GainMode::unit;
        else if (gm == "rayleigh")
            ri.gains = GainMode::rayleigh;
        else
            throw ParseError("unknown gain_mode '" + gm + "'");
        s.agents = random_agents(ri);
    }
    else if (init == "explicit")
    {
        for (std::size_t m = 0; m < count; ++m)
        {
            auto key = "agent" + std::to_string(m);
            auto text = agents.get_optional<std::string>(key);
            if (!text)
                throw ParseError("missing " + key);
            auto vals = parse_list(*text);
            if (vals.size() != 4 && vals.size() != 5)
                throw ParseError(key + " needs 'a alpha x y [gamma]'");
            AgentState ag;
            ag.amplitude = vals[0];
            ag.phase = vals[1];
            ag.position = {vals[2], vals[3]};
            ag.anchor = ag.position;
            ag.gain = vals.size() == 5 ? vals[4] : 1.0;
            s.agents.push_back(ag);
        }
    }
    else
        throw ParseError("unknown agent init '" + init + "'");

    SymMat2 penalty = SymMat2::scaled_identity(ref.penalty);
    if (auto p = agents.get_optional<std::string>("penalty"))
    {
        auto vals = parse_list(*p);
        if (vals.size() == 1)
            penalty = SymMat2::scaled_identity(vals[0]);
        else if (vals.size() == 3)
            penalty = {vals[0], vals[1], vals[2]};
        else
            throw ParseError("penalty needs 's' or 'sxx sxy syy'");
    }
    s.penalties.per_agent.assign(s.agents.size(), penalty);

    const auto mode = get_or<std::string>(target, "mode", "channel-aware");
    if (mode == "file")
    {
        auto file = target.get_optional<std::string>("file");
        if (!file)
            throw ParseError("target mode 'file' needs a file key");
        std::filesystem::path p(*file);
        if (p.is_relative())
            p = base_dir / p;
        std::ifstream f(p);
        if (!f)
            throw IoError("cannot open target file " + p.string());
        s.grid = read_pattern_csv(f).grid();
    }
    else
    {
        std::vector<double> rhos;
        if (auto r = grid.get_optional<std::string>("rho"))
            rhos = parse_list(*r);
        else
        {
            auto rw = grid.get_optional<std::string>("rho_wavelengths");
            rhos = rw ? parse_list(*rw) : ref.rho_wavelengths;
            for (auto &r : rhos)
                r *= lambda;
        }
        const auto theta_count = get_or<std::size_t>(grid, "theta_count", ref.theta_count);

        DesiredPatternSpec spec;
        const auto n = get_or<std::size_t>(target, "elements", 5);
        const double spacing = target.get_optional<std::string>("spacing")
                                   ? get_or(target, "spacing", 0.0)
                                   : get_or(target, "spacing_wavelengths", 0.5) * lambda;
        spec.positions = make_esla(n, spacing);
        auto taper = get_or<std::string>(target, "taper", "binomial");
        if (taper == "binomial")
            spec.amplitudes = binomial_taper(n);
        else if (taper == "uniform")
            spec.amplitudes.assign(n, 1.0);
        else
            throw ParseError("unknown taper '" + taper + "'");
        spec.phase_gradient = get_or(target, "phase_gradient", -0.5 * std::numbers::pi);
        spec.path_loss_exponent = get_or(target, "path_loss", s.constants.path_loss_exponent);
        spec.mode = parse_mode(mode);
        try
        {
            s.grid = desired_pattern(spec, make_grid(theta_count, rhos), s.constants.wave_number, s.min_distance);
        }
        catch (const std::invalid_argument &e)
        {
            throw ParseError(e.what());
        }
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path &path, std::optional<std::uint64_t> seed_override)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open scenario file " + path.string());
    return parse_scenario(in, path.parent_path(), seed_override);
}

void write_pattern_csv(std::ostream &out, const SampleGrid &grid, const std::vector<double> *achieved)
{
    out << (achieved ? "rho,theta,magnitude,achieved\n" : "rho,theta,magnitude\n");
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        out << format_number(grid.points[i].rho) << ',' << format_number(grid.points[i].theta) << ','
            << format_number(grid.desired[i]);
        if (achieved)
            out << ',' << format_number((*achieved)[i]);
        out << '\n';
    }
}

PatternTable read_pattern_csv(std::istream &in)
{
    auto body = read_csv_body(in, {"rho,theta,magnitude", "rho,theta,magnitude,achieved"});
    const bool has_achieved = body.header.ends_with(",achieved");
    const auto &rows = body.rows;

    PatternTable t;
    const std::size_t width = has_achieved ? 4 : 3;
    for (const auto &[row, line] : rows)
    {
        auto f = split(line, ',');
        if (f.size() != width)
            throw ParseError("expected " + std::to_string(width) + " fields", row);
        t.points.push_back({parse_number(f[0], row), parse_number(f[1], row)});
        t.magnitude.push_back(parse_number(f[2], row));
        if (has_achieved)
            t.achieved.push_back(parse_number(f[3], row));
    }
    return t;
}

std::vector<TrajectoryRow> trajectory_rows(const Trajectory &traj)
{
    std::vector<TrajectoryRow> rows;
    for (const auto &snap : traj.samples)
        for (std::size_t m = 0; m < snap.agents.size(); ++m)
        {
            const auto &ag = snap.agents[m];
            rows.push_back({snap.t, m, ag.amplitude, wrap_phase(ag.phase), ag.position, ag.motion_aux});
        }
    return rows;
}

void write_trajectory_csv(std::ostream &out, const std::vector<TrajectoryRow> &rows)
{
    out << "t,m,a_m,alpha_m,x_m,y_m,vx_m,vy_m\n";
    for (const auto &r : rows)
        out << format_number(r.t) << ',' << r.agent << ',' << format_number(r.amplitude) << ','
            << format_number(r.phase) << ',' << format_number(r.position.x) << ',' << format_number(r.position.y)
            << ',' << format_number(r.motion_aux.x) << ',' << format_number(r.motion_aux.y) << '\n';
}

std::vector<TrajectoryRow> read_trajectory_csv(std::istream &in)
{
    auto rows = read_csv_body(in, {"t,m,a_m,alpha_m,x_m,y_m,vx_m,vy_m"}).rows;
    std::vector<TrajectoryRow> out;
    for (const auto &[row, line] : rows)
    {
        auto f = split(line, ',');
        if (f.size() != 8)
            throw ParseError("expected 8 fields", row);
        double m = parse_number(f[1], row);
        if (m < 0 || m != std::floor(m))
            throw ParseError("agent index must be a non-negative integer", row);
        out.push_back({parse_number(f[0], row), static_cast<std::size_t>(m), parse_number(f[2], row),
                       parse_number(f[3], row), {parse_number(f[4], row), parse_number(f[5], row)},
                       {parse_number(f[6], row), parse_number(f[7], row)}});
    }
    return out;
}

std::vector<double> achieved_pattern(const std::vector<AgentState> &agents, const Scenario &scenario)
{
    const auto prop = scenario.propagation();
    const auto a = amplitudes_of(agents);
    std::vector<double> out;
    out.reserve(scenario.grid.size());
    for (const auto &p : scenario.grid.points)
        out.push_back(af_magnitude(a, phasor_basis(agents, p, prop)));
    return out;
}

RunSummary summarize(const Trajectory &traj, const Scenario &scenario, double wall_time)
{
    RunSummary s;
    const auto &hist = traj.final.objective_history;
    s.initial = hist.empty() ? ObjectiveValue{} : hist.front().value;
    s.final = hist.empty() ? ObjectiveValue{} : hist.back().value;
    s.wall_time = wall_time;
    s.stats = traj.stats;
    s.stop_reason = traj.stop_reason;
    s.final_agents = traj.final.agents;
    s.warnings = traj.warnings;
    s.seed = scenario.rng_seed;
    s.final_time = traj.final.t;
    return s;
}

nlohmann::json to_json(const RunSummary &summary, bool include_wall_time)
{
    auto obj = [](const ObjectiveValue &v) {
        return nlohmann::json{{"pattern_term", v.pattern_term}, {"motion_term", v.motion_term}, {"total", v.total}};
    };
    nlohmann::json agents = nlohmann::json::array();
    for (std::size_t m = 0; m < summary.final_agents.size(); ++m)
    {
        const auto &ag = summary.final_agents[m];
        agents.push_back({{"m", m},
                          {"amplitude", ag.amplitude},
                          {"phase_mod_2pi", wrap_phase(ag.phase)},
                          {"x", ag.position.x},
                          {"y", ag.position.y}});
    }
    nlohmann::json out{{"initial", obj(summary.initial)},
                       {"final", obj(summary.final)},
                       {"steps",
                        {{"fast", summary.stats.fast_steps},
                         {"slow", summary.stats.slow_steps},
                         {"rejected", summary.stats.rejected_steps},
                         {"descent_failures", summary.stats.descent_failures}}},
                       {"stop_reason", summary.stop_reason},
                       {"final_time", summary.final_time},
                       {"seed", summary.seed},
                       {"agents", agents},
                       {"warnings", summary.warnings}};
    if (include_wall_time)
        out["wall_time_s"] = summary.wall_time;
    return out;
}

std::vector<PolarRow> polar_rows(const PatternTable &initial, const PatternTable &final, std::optional<double> rho)
{
    if (initial.points != final.points || initial.magnitude.size() != final.magnitude.size())
        throw ParseError("grid mismatch");
    if (initial.points.empty())
        throw ParseError("no samples");
    if (initial.achieved.empty() || final.achieved.empty())
        throw ParseError("pattern files need an achieved column");
    for (std::size_t i = 0; i < initial.magnitude.size(); ++i)
        if (initial.magnitude[i] != final.magnitude[i])
            throw ParseError("grid mismatch");

    double ring = initial.points.front().rho;
    if (rho)
    {
        double best = std::numeric_limits<double>::infinity();
        for (const auto &p : initial.points)
            if (std::abs(p.rho - *rho) < best)
            {
                best = std::abs(p.rho - *rho);
                ring = p.rho;
            }
    }
    std::vector<PolarRow> rows;
    for (std::size_t i = 0; i < initial.points.size(); ++i)
        if (initial.points[i].rho == ring)
            rows.push_back({initial.points[i].theta, initial.magnitude[i], initial.achieved[i], final.achieved[i]});
    return rows;
}

void write_polar_csv(std::ostream &out, const std::vector<PolarRow> &rows)
{
    out << "theta,desired,initial,final\n";
    for (const auto &r : rows)
        out << format_number(r.theta) << ',' << format_number(r.desired) << ',' << format_number(r.initial) << ','
            << format_number(r.final) << '\n';
}

void write_evolution_csv(std::ostream &out, const std::vector<TrajectoryRow> &rows)
{
    if (rows.empty())
        throw ParseError("no samples");
    out << "t,agent,amplitude,phase_mod_2pi\n";
    for (const auto &r : rows)
        out << format_number(r.t) << ',' << r.agent << ',' << format_number(r.amplitude) << ','
            << format_number(wrap_phase(r.phase)) << '\n';
}

} // namespace beamflow
