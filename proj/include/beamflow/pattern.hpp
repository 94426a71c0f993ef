// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <vector>

#include "beamflow/types.hpp"

namespace beamflow
{

enum class PatternMode
{
    far_field,     // sum a_m exp(j(m alpha + k r_m . rhat)), no channel
    channel_aware  // fictitious agents seen through gamma d^{-mu/2} exp(j k d)
};

// Target pattern built from n fictitious elements with a linear phase
// gradient m * phase_gradient across them.
struct DesiredPatternSpec
{
    std::vector<Vec2> positions;
    std::vector<double> amplitudes;
    double phase_gradient = 0.0;
    std::vector<double> gains;      // empty means all 1
    double path_loss_exponent = 2.0;
    PatternMode mode = PatternMode::far_field;
};

struct GridSpec
{
    std::vector<double> thetas;  // strictly increasing in [0, 2pi)
    std::vector<double> rhos;    // strictly increasing, > 0

    std::size_t size() const { return thetas.size() * rhos.size(); }

    // rho-major, theta-minor order
    std::vector<SamplePoint> points() const;
};

// ((m - (n-1)/2) * spacing, 0) for m = 0..n-1
std::vector<Vec2> make_esla(std::size_t n, double spacing);

// C(n-1, m), unnormalised
std::vector<double> binomial_taper(std::size_t n);

// theta_j = 2 pi j / theta_count paired with every rho
GridSpec make_grid(std::size_t theta_count, std::vector<double> rhos);

double desired_magnitude(const DesiredPatternSpec &spec, SamplePoint point, double wave_number,
                         double min_distance);

SampleGrid desired_pattern(const DesiredPatternSpec &spec, const GridSpec &grid, double wave_number,
                           double min_distance);

// Throws std::invalid_argument on a malformed spec or grid.
void check_pattern_spec(const DesiredPatternSpec &spec);
void check_grid_spec(const GridSpec &grid);

} // namespace beamflow
