// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#include "beamflow/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <utility>

namespace beamflow
{

std::string ValidationReport::to_string() const
{
    std::ostringstream out;
    for (const auto &e : errors)
        out << "error: " << e << '\n';
    for (const auto &w : warnings)
        out << "warning: " << w << '\n';
    return out.str();
}

ValidationError::ValidationError(ValidationReport report)
    : std::invalid_argument(report.to_string()), report_(std::move(report))
{
}

namespace
{

bool finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

std::string agent_tag(std::size_t m) { return "agent " + std::to_string(m) + ": "; }

} // namespace

ValidationReport check_scenario(const Scenario &s)
{
    ValidationReport r;
    auto fail = [&r](std::string msg) { r.errors.push_back(std::move(msg)); };

    const auto &c = s.constants;
    if (!(c.frequency > 0.0) || !std::isfinite(c.frequency))
        fail("frequency must be positive");
    else
    {
        double lambda = speed_of_light / c.frequency;
        if (!(std::abs(c.wavelength - lambda) <= 1e-9 * lambda))
            fail("wavelength inconsistent with frequency");
        double k = two_pi / c.wavelength;
        if (!(std::abs(c.wave_number - k) <= 1e-12 * k))
            fail("wave number inconsistent with wavelength");
    }
    if (!(c.path_loss_exponent >= 0.0) || !std::isfinite(c.path_loss_exponent))
        fail("path loss exponent must be non-negative");

    if (s.agents.empty())
        fail("at least one agent is required");
    for (std::size_t m = 0; m < s.agents.size(); ++m)
    {
        const auto &a = s.agents[m];
        if (!(a.amplitude >= 0.0) || !std::isfinite(a.amplitude))
            fail(agent_tag(m) + "negative amplitude");
        if (!std::isfinite(a.phase))
            fail(agent_tag(m) + "phase not finite");
        if (!(a.gain > 0.0) || !std::isfinite(a.gain))
            fail(agent_tag(m) + "gain must be positive");
        if (!finite(a.position) || !finite(a.anchor) || !finite(a.motion_aux))
            fail(agent_tag(m) + "non-finite position, anchor or motion state");
    }

    if (s.penalties.per_agent.size() != s.agents.size())
        fail("penalty count does not match agent count");
    for (std::size_t m = 0; m < s.penalties.per_agent.size(); ++m)
        if (!s.penalties.per_agent[m].positive_definite())
            fail(agent_tag(m) + "penalty not positive definite");

    const auto &g = s.grid;
    if (g.empty())
        fail("empty grid");
    if (g.desired.size() != g.points.size())
        fail("desired magnitude count does not match grid size");
    std::set<std::pair<double, double>> seen;
    for (std::size_t i = 0; i < g.points.size(); ++i)
    {
        const auto &p = g.points[i];
        if (!(p.rho > 0.0) || !std::isfinite(p.rho))
            fail("grid point " + std::to_string(i) + ": rho must be positive");
        if (!(p.theta >= 0.0 && p.theta < two_pi))
            fail("grid point " + std::to_string(i) + ": theta outside [0, 2pi)");
        if (!seen.emplace(p.rho, p.theta).second)
            fail("grid point " + std::to_string(i) + ": duplicate (rho, theta)");
    }
    for (std::size_t i = 0; i < g.desired.size(); ++i)
        if (!(g.desired[i] >= 0.0) || !std::isfinite(g.desired[i]))
            fail("grid point " + std::to_string(i) + ": desired magnitude must be finite and non-negative");

    if (!(s.epsilon > 0.0 && s.epsilon < 1.0))
        fail("epsilon must lie in (0, 1)");
    else if (s.epsilon > 0.1)
        r.warnings.push_back("epsilon > 0.1 weakens the time-scale separation");
    if (!(s.fast_step > 0.0) || !std::isfinite(s.fast_step))
        fail("fast step must be positive");
    if (!(s.slow_step > 0.0) || !std::isfinite(s.slow_step))
        fail("slow step must be positive");
    if (!(s.horizon >= 0.0) || !std::isfinite(s.horizon))
        fail("horizon must be non-negative");
    if (!(s.min_distance > 0.0) || !std::isfinite(s.min_distance))
        fail("minimum distance must be positive");
    if (!(s.tol_fast >= 0.0) || !(s.tol_slow >= 0.0))
        fail("stopping tolerances must be non-negative");

    return r;
}

Scenario validate_scenario(Scenario s)
{
    auto report = check_scenario(s);
    if (!report.ok())
        throw ValidationError(std::move(report));
    return s;
}

} // namespace beamflow
