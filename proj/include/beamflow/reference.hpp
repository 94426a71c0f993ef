// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <vector>

#include "beamflow/pattern.hpp"
#include "beamflow/types.hpp"

namespace beamflow
{

enum class GainMode
{
    unit,     // gamma_m = 1
    rayleigh  // Rayleigh with sigma = sqrt(2/pi), mean 1
};

struct RandomInit
{
    std::size_t count = 5;
    double side = 0.0;  // square side centred at the origin; m
    GainMode gains = GainMode::unit;
    std::uint64_t seed = 42;
};

// Amplitudes 1, phases U[0, 2pi), positions U(square), anchors = positions,
// motion state 0. Draw order per agent: x, y, phase, gain.
std::vector<AgentState> random_agents(const RandomInit &init);

// 5-element lambda/2 ESLA with binomial taper and phase gradient -pi/2.
DesiredPatternSpec reference_pattern_spec(const PhysicalConstants &c, PatternMode mode);

struct ReferenceParameters
{
    double frequency = 40e6;
    double path_loss_exponent = 0.0;
    std::size_t agents = 5;
    std::size_t theta_count = 36;
    std::vector<double> rho_wavelengths{1.0, 2.0, 4.0};
    double init_side_wavelengths = 2.0;
    double penalty = 1.0;
    double epsilon = 0.01;
    double slow_step = 1e-2;
    double horizon = 1.0;
    PatternMode target_mode = PatternMode::channel_aware;
    std::uint64_t seed = 42;
};

Scenario build_reference_scenario(const ReferenceParameters &p);

// Reference scenario with default parameters and the given seed.
Scenario reference_scenario(std::uint64_t seed = 42);

} // namespace beamflow
