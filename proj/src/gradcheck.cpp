// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#include "beamflow/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "beamflow/array_factor.hpp"
#include "beamflow/gradients.hpp"
#include "beamflow/objective.hpp"

namespace beamflow
{

double relative_error(const std::vector<double> &analytic, const std::vector<double> &reference, double floor)
{
    double diff = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < analytic.size(); ++j)
    {
        diff = std::max(diff, std::abs(analytic[j] - reference[j]));
        scale = std::max(scale, std::abs(analytic[j]));
    }
    return diff / std::max(scale, floor);
}

GradientCheckReport check_gradients(const Scenario &base, const GradientCheckOptions &options)
{
    std::mt19937_64 rng(options.seed);
    const double lambda = base.constants.wavelength;
    std::uniform_real_distribution<double> coord(-lambda, lambda);
    std::uniform_real_distribution<double> phase(0.0, two_pi);
    std::uniform_real_distribution<double> amp(0.5, 2.0);
    std::uniform_real_distribution<double> path_loss(0.0, 3.0);

    GradientCheckReport report;
    report.trials = options.trials;
    const std::size_t s = base.agents.size();

    for (std::size_t trial = 0; trial < options.trials; ++trial)
    {
        Scenario sc = base;
        for (auto &ag : sc.agents)
        {
            ag.position = {coord(rng), coord(rng)};
            ag.anchor = ag.position;
            ag.phase = phase(rng);
            ag.amplitude = amp(rng);
        }
        if (options.randomize_path_loss)
            sc.constants.path_loss_exponent = path_loss(rng);
        const auto prop = sc.propagation();
        if (options.matched_targets)
        {
            const auto a = amplitudes_of(sc.agents);
            for (std::size_t i = 0; i < sc.grid.size(); ++i)
                sc.grid.desired[i] = af_magnitude(a, phasor_basis(sc.agents, sc.grid.points[i], prop));
        }

        auto g = pattern_gradient(sc.agents, sc.grid, prop);
        std::vector<double> g_pos;
        for (auto v : g.position)
        {
            g_pos.push_back(v.x);
            g_pos.push_back(v.y);
        }
        const double scale = 1.0 + options.fault_scale;
        for (auto *vec : {&g.amplitude, &g.phase, &g_pos})
            for (auto &x : *vec)
                x *= scale;

        auto amp_slice = [&](std::span<const double> x) {
            auto agents = sc.agents;
            for (std::size_t m = 0; m < s; ++m)
                agents[m].amplitude = x[m];
            return pattern_term(agents, sc.grid, prop);
        };
        auto phase_slice = [&](std::span<const double> x) {
            auto agents = sc.agents;
            for (std::size_t m = 0; m < s; ++m)
                agents[m].phase = x[m];
            return pattern_term(agents, sc.grid, prop);
        };
        auto pos_slice = [&](std::span<const double> x) {
            auto agents = sc.agents;
            for (std::size_t m = 0; m < s; ++m)
                agents[m].position = {x[2 * m], x[2 * m + 1]};
            return pattern_term(agents, sc.grid, prop);
        };

        std::vector<double> pos0;
        for (const auto &ag : sc.agents)
        {
            pos0.push_back(ag.position.x);
            pos0.push_back(ag.position.y);
        }
        auto fd_a = fd_gradient(amp_slice, amplitudes_of(sc.agents), options.fd_step);
        auto fd_p = fd_gradient(phase_slice, phases_of(sc.agents), options.fd_step);
        auto fd_r = fd_gradient(pos_slice, pos0, options.fd_step);

        report.amplitude.max_relative_error =
            std::max(report.amplitude.max_relative_error, relative_error(g.amplitude, fd_a, options.error_floor));
        report.phase.max_relative_error = std::max(report.phase.max_relative_error, relative_error(g.phase, fd_p, options.error_floor));
        report.position.max_relative_error =
            std::max(report.position.max_relative_error, relative_error(g_pos, fd_r, options.error_floor));
    }
    for (auto *k : {&report.amplitude, &report.phase, &report.position})
        k->pass = k->max_relative_error < options.tolerance;
    return report;
}

} // namespace beamflow
