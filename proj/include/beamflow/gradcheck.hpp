// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <vector>

#include "beamflow/types.hpp"

namespace beamflow
{

struct GradientCheckOptions
{
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    double tolerance = 1e-5;
    double fd_step = 1e-6;
    // Replace the targets with the achieved |AF| of each randomised state.
    bool matched_targets = false;
    // Draw a path loss exponent per trial from [0, 3].
    bool randomize_path_loss = true;
    // Negative control: scales the analytic gradients by (1 + fault_scale).
    double fault_scale = 0.0;
    // Denominator floor of the relative error.
    double error_floor = 1e-4;
};

struct GradientKindResult
{
    double max_relative_error = 0.0;
    bool pass = true;
};

struct GradientCheckReport
{
    GradientKindResult amplitude;
    GradientKindResult phase;
    GradientKindResult position;
    std::size_t trials = 0;

    bool pass() const { return amplitude.pass && phase.pass && position.pass; }
};

/*!
Randomises amplitudes, phases and positions of the base scenario's agents
per trial, sums the analytic gradients over the grid and compares each
kind against central differences of the full pattern objective. The error
of a kind is ||g - g_fd||_inf / max(||g||_inf, error_floor). With matched
targets the analytic gradient is exactly zero and the finite differences
carry O(h^2) truncation noise, which a 1e-8 floor would amplify past the
tolerance; 1e-4 is still far below any unmatched gradient.
!*/
GradientCheckReport check_gradients(const Scenario &base, const GradientCheckOptions &options = {});

double relative_error(const std::vector<double> &analytic, const std::vector<double> &reference, double floor);

} // namespace beamflow
