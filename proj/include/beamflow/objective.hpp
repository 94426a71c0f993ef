// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#pragma once

#include <vector>

#include "beamflow/types.hpp"

namespace beamflow
{

// Phi_i = 1/2 (f_i - |AF(rho_i, theta_i)|)^2
double phi_i(const std::vector<AgentState> &agents, SamplePoint point, double desired, const Propagation &prop);

// Sum of Phi_i over the grid, reduced in index order.
double pattern_term(const std::vector<AgentState> &agents, const SampleGrid &grid, const Propagation &prop);

// sum_m (r_m - r_m(t0))^T S_m (r_m - r_m(t0))
double motion_integrand(const std::vector<AgentState> &agents, const MotionPenalty &penalties);

// Trapezoidal accumulation of the motion integrand over elapsed time.
class MotionIntegral
{
  public:
    explicit MotionIntegral(double initial_integrand = 0.0) : last_(initial_integrand) {}

    void advance(double dt, double integrand)
    {
        value_ += 0.5 * dt * (last_ + integrand);
        last_ = integrand;
    }

    double value() const { return value_; }
    double last_integrand() const { return last_; }

  private:
    double value_ = 0.0;
    double last_ = 0.0;
};

ObjectiveValue objective(const std::vector<AgentState> &agents, const Scenario &scenario, double motion_term);

} // namespace beamflow
