// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "beamflow/array_factor.hpp"
#include "beamflow/types.hpp"

namespace beamflow
{

struct GradientBundle
{
    std::vector<double> amplitude;  // d/da_m
    std::vector<double> phase;      // d/dalpha_m
    std::vector<Vec2> position;     // (d/dx_m, d/dy_m)

    explicit GradientBundle(std::size_t s = 0) : amplitude(s, 0.0), phase(s, 0.0), position(s) {}

    double amplitude_norm() const;
    double phase_norm() const;
    double position_norm() const;
};

// |AF| is replaced by max(|AF|, magnitude_floor(f_i)) wherever it divides.
inline double magnitude_floor(double desired) { return 1e-12 * (1.0 + desired); }

// (|AF| - f) / |AF| * ((a.u) u + (a.v) v)
std::vector<double> grad_amplitude(std::span<const double> a, const PhasorBasis &basis, double desired);

// (|AF| - f) / |AF| * (-(a.u) (a o v) + (a.v) (a o u))
std::vector<double> grad_phase(std::span<const double> a, const PhasorBasis &basis, double desired);

// Partials of agent m's terms of a.u and a.v with respect to its position.
struct PositionPartials
{
    Vec2 du;  // (d(a.u)/dx_m, d(a.u)/dy_m)
    Vec2 dv;  // (d(a.v)/dx_m, d(a.v)/dy_m)
};

// When the distance is clamped at min_distance it is treated as constant,
// so only the k cos(theta) / k sin(theta) phase terms survive.
PositionPartials position_partials(const AgentState &agent, SamplePoint point, const Propagation &prop);

Vec2 grad_position(std::span<const double> a, const PhasorBasis &basis, double desired,
                   const PositionPartials &partials);
Vec2 grad_position(std::span<const double> a, const PhasorBasis &basis, double desired, std::size_t m,
                   const std::vector<AgentState> &agents, SamplePoint point, const Propagation &prop);

// Sum over the grid of all three gradients, in index order.
GradientBundle pattern_gradient(const std::vector<AgentState> &agents, const SampleGrid &grid,
                                const Propagation &prop);

/*!
Central differences (f(x + h) - f(x - h)) / 2h per coordinate with
h_j = step * (1 + |x_j|). Verification oracle only.
!*/
std::vector<double> fd_gradient(const std::function<double(std::span<const double>)> &f,
                                std::span<const double> x, double step = 1e-6);

/*!
Pattern objective with positions held fixed. Caches the per-sample channel
gain gamma d^{-mu/2} and geometric phase zeta so repeated evaluations over
amplitudes and phases only pay for one sincos per agent and sample.
!*/
class FastPatternModel
{
  public:
    FastPatternModel(const std::vector<AgentState> &agents, const SampleGrid &grid, const Propagation &prop);

    std::size_t agent_count() const { return agents_; }

    double value(std::span<const double> a, std::span<const double> alpha) const;

    // Writes sum_i grad_a Phi_i and sum_i grad_alpha Phi_i; returns sum_i Phi_i.
    double gradient(std::span<const double> a, std::span<const double> alpha, std::span<double> g_a,
                    std::span<double> g_alpha) const;

  private:
    std::size_t agents_ = 0;
    const SampleGrid *grid_ = nullptr;
    std::vector<double> gain_;  // [i * s + m]
    std::vector<double> zeta_;  // [i * s + m]
};

} // namespace beamflow
