// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#include "beamflow/array_factor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace beamflow
{

double distance(Vec2 position, double rho, double theta, double min_distance)
{
    double dx = position.x - rho * std::cos(theta);
    double dy = position.y - rho * std::sin(theta);
    return std::max(std::hypot(dx, dy), min_distance);
}

double zeta(Vec2 position, double rho, double theta, double wave_number, double min_distance)
{
    double d = distance(position, rho, theta, min_distance);
    return wave_number * position.x * std::cos(theta) + wave_number * position.y * std::sin(theta) +
           wave_number * d;
}

double channel_gain(double gain, double d, double path_loss_exponent)
{
    if (path_loss_exponent == 0.0)
        return gain;
    return gain * std::pow(d, -0.5 * path_loss_exponent);
}

PhasorBasis phasor_basis(const std::vector<AgentState> &agents, SamplePoint point, const Propagation &prop)
{
    const std::size_t s = agents.size();
    const double k = prop.constants.wave_number;
    const double mu = prop.constants.path_loss_exponent;

    PhasorBasis b;
    b.u.resize(s);
    b.v.resize(s);
    b.d.resize(s);
    b.zeta.resize(s);
    for (std::size_t m = 0; m < s; ++m)
    {
        const auto &ag = agents[m];
        double d = distance(ag.position, point.rho, point.theta, prop.min_distance);
        double z = k * ag.position.x * std::cos(point.theta) + k * ag.position.y * std::sin(point.theta) + k * d;
        double g = channel_gain(ag.gain, d, mu);
        b.d[m] = d;
        b.zeta[m] = z;
        b.u[m] = g * std::cos(ag.phase + z);
        b.v[m] = g * std::sin(ag.phase + z);
    }
    return b;
}

PhasorBasis far_field_basis(const std::vector<AgentState> &agents, double theta, double wave_number)
{
    const std::size_t s = agents.size();
    PhasorBasis b;
    b.u.resize(s);
    b.v.resize(s);
    b.d.assign(s, 0.0);
    b.zeta.resize(s);
    for (std::size_t m = 0; m < s; ++m)
    {
        const auto &ag = agents[m];
        double z = wave_number * (ag.position.x * std::cos(theta) + ag.position.y * std::sin(theta));
        b.zeta[m] = z;
        b.u[m] = ag.gain * std::cos(ag.phase + z);
        b.v[m] = ag.gain * std::sin(ag.phase + z);
    }
    return b;
}

std::complex<double> af_complex(std::span<const double> amplitudes, const PhasorBasis &basis)
{
    assert(amplitudes.size() == basis.size());
    double re = 0.0;
    double im = 0.0;
    for (std::size_t m = 0; m < basis.size(); ++m)
    {
        re += amplitudes[m] * basis.u[m];
        im += amplitudes[m] * basis.v[m];
    }
    return {re, im};
}

std::complex<double> af_complex(const std::vector<AgentState> &agents, SamplePoint point, const Propagation &prop)
{
    return af_complex(amplitudes_of(agents), phasor_basis(agents, point, prop));
}

double af_magnitude(std::span<const double> amplitudes, const PhasorBasis &basis)
{
    auto af = af_complex(amplitudes, basis);
    return std::hypot(af.real(), af.imag());
}

} // namespace beamflow
