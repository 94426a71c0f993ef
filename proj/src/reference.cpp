// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#include "beamflow/reference.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace beamflow
{

std::vector<AgentState> random_agents(const RandomInit &init)
{
    std::mt19937_64 rng(init.seed);
    std::uniform_real_distribution<double> coord(-0.5 * init.side, 0.5 * init.side);
    std::uniform_real_distribution<double> phase(0.0, two_pi);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double sigma = std::sqrt(2.0 / std::numbers::pi);

    std::vector<AgentState> agents(init.count);
    for (auto &ag : agents)
    {
        ag.position.x = coord(rng);
        ag.position.y = coord(rng);
        ag.anchor = ag.position;
        ag.motion_aux = {};
        ag.phase = phase(rng);
        ag.amplitude = 1.0;
        ag.gain = 1.0;
        if (init.gains == GainMode::rayleigh)
            ag.gain = sigma * std::sqrt(-2.0 * std::log1p(-unit(rng)));
    }
    return agents;
}

DesiredPatternSpec reference_pattern_spec(const PhysicalConstants &c, PatternMode mode)
{
    DesiredPatternSpec spec;
    spec.positions = make_esla(5, 0.5 * c.wavelength);
    spec.amplitudes = binomial_taper(5);
    spec.phase_gradient = -0.5 * std::numbers::pi;
    spec.path_loss_exponent = c.path_loss_exponent;
    spec.mode = mode;
    return spec;
}

Scenario build_reference_scenario(const ReferenceParameters &p)
{
    Scenario s;
    s.constants = PhysicalConstants::from_frequency(p.frequency, p.path_loss_exponent);
    s.min_distance = Propagation::default_min_distance(s.constants);
    const double lambda = s.constants.wavelength;

    s.agents = random_agents({p.agents, p.init_side_wavelengths * lambda, GainMode::unit, p.seed});
    s.penalties.per_agent.assign(p.agents, SymMat2::scaled_identity(p.penalty));

    std::vector<double> rhos;
    for (double r : p.rho_wavelengths)
        rhos.push_back(r * lambda);
    s.grid = desired_pattern(reference_pattern_spec(s.constants, p.target_mode), make_grid(p.theta_count, rhos),
                             s.constants.wave_number, s.min_distance);

    s.epsilon = p.epsilon;
    s.slow_step = p.slow_step;
    s.fast_step = p.epsilon * p.slow_step / 10.0;
    s.horizon = p.horizon;
    s.rng_seed = p.seed;
    return s;
}

Scenario reference_scenario(std::uint64_t seed)
{
    ReferenceParameters p;
    p.seed = seed;
    return build_reference_scenario(p);
}

} // namespace beamflow
