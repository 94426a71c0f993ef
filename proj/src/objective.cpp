// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#include "beamflow/objective.hpp"

#include "beamflow/array_factor.hpp"

namespace beamflow
{

double phi_i(const std::vector<AgentState> &agents, SamplePoint point, double desired, const Propagation &prop)
{
    auto basis = phasor_basis(agents, point, prop);
    double residual = desired - af_magnitude(amplitudes_of(agents), basis);
    return 0.5 * residual * residual;
}

double pattern_term(const std::vector<AgentState> &agents, const SampleGrid &grid, const Propagation &prop)
{
    const auto a = amplitudes_of(agents);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        double residual = grid.desired[i] - af_magnitude(a, phasor_basis(agents, grid.points[i], prop));
        sum += 0.5 * residual * residual;
    }
    return sum;
}

double motion_integrand(const std::vector<AgentState> &agents, const MotionPenalty &penalties)
{
    double sum = 0.0;
    for (std::size_t m = 0; m < agents.size(); ++m)
        sum += penalties.per_agent[m].quadratic(agents[m].position - agents[m].anchor);
    return sum;
}

ObjectiveValue objective(const std::vector<AgentState> &agents, const Scenario &scenario, double motion_term)
{
    return ObjectiveValue::make(pattern_term(agents, scenario.grid, scenario.propagation()), motion_term);
}

} // namespace beamflow
