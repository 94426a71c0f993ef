// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "beamflow/array_factor.hpp"
#include "beamflow/types.hpp"

namespace beamflow::testing
{

// Hand-rolled generators for property tests.
class Gen
{
  public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    std::size_t index(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_); }

    AgentState agent(double extent = 10.0)
    {
        AgentState ag;
        ag.amplitude = uniform(0.2, 2.0);
        ag.phase = uniform(-6.0, 12.0);
        ag.gain = uniform(0.5, 1.5);
        ag.position = {uniform(-extent, extent), uniform(-extent, extent)};
        ag.anchor = ag.position;
        return ag;
    }

    std::vector<AgentState> agents(std::size_t s, double extent = 10.0)
    {
        std::vector<AgentState> out;
        for (std::size_t m = 0; m < s; ++m)
            out.push_back(agent(extent));
        return out;
    }

    SamplePoint point(double rho_max = 60.0) { return {uniform(1.0, rho_max), uniform(0.0, two_pi)}; }

    SampleGrid grid(std::size_t n, double f_max = 5.0)
    {
        SampleGrid g;
        for (std::size_t i = 0; i < n; ++i)
        {
            g.points.push_back(point());
            g.desired.push_back(uniform(0.0, f_max));
        }
        return g;
    }

    Propagation propagation(double mu_max = 3.0)
    {
        return {PhysicalConstants::from_frequency(40e6, uniform(0.0, mu_max)), 7.5e-3};
    }

  private:
    std::mt19937_64 rng_;
};

// Propagation with an arbitrary wave number (test geometry in plain units).
inline Propagation unit_propagation(double mu = 0.0, double k = 1.0, double dmin = 1e-3)
{
    PhysicalConstants c;
    c.wave_number = k;
    c.wavelength = two_pi / k;
    c.frequency = speed_of_light / c.wavelength;
    c.path_loss_exponent = mu;
    return {c, dmin};
}

inline AgentState agent_at(double x, double y, double a = 1.0, double alpha = 0.0, double gamma = 1.0)
{
    AgentState ag;
    ag.amplitude = a;
    ag.phase = alpha;
    ag.gain = gamma;
    ag.position = {x, y};
    ag.anchor = ag.position;
    return ag;
}

inline double max_abs_diff(const std::vector<double> &x, const std::vector<double> &y)
{
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        d = std::max(d, std::abs(x[i] - y[i]));
    return d;
}

inline double max_abs(const std::vector<double> &x)
{
    double d = 0.0;
    for (double v : x)
        d = std::max(d, std::abs(v));
    return d;
}

} // namespace beamflow::testing
