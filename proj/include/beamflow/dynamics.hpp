// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "beamflow/gradients.hpp"
#include "beamflow/types.hpp"

namespace beamflow
{

struct GradientNormRecord
{
    double t = 0.0;
    double amplitude = 0.0;  // ||sum_i grad_a Phi_i||
    double phase = 0.0;      // ||sum_i grad_alpha Phi_i||
    double position = 0.0;   // ||sum_i grad_r Phi_i|| over all agents
};

struct ObjectiveRecord
{
    double t = 0.0;
    ObjectiveValue value;
};

struct FlowState
{
    double t = 0.0;
    std::vector<AgentState> agents;
    double motion_term = 0.0;      // running trapezoidal integral
    double motion_integrand = 0.0; // integrand at t
    std::vector<ObjectiveRecord> objective_history;
    std::vector<GradientNormRecord> gradient_norm_history;

    static FlowState initial(const Scenario &scenario);
};

struct Snapshot
{
    double t = 0.0;
    std::vector<AgentState> agents;
    ObjectiveValue objective;
};

// Fast-gradient norm ||g_a|| + ||g_alpha|| at the start and end of one
// fast sub-sequence, i.e. just before the slow step that follows it.
struct SeparationRecord
{
    double t = 0.0;
    double fast_norm_start = 0.0;
    double fast_norm_end = 0.0;
};

struct RunStats
{
    std::size_t fast_steps = 0;
    std::size_t slow_steps = 0;
    std::size_t rejected_steps = 0;    // step halvings
    std::size_t descent_failures = 0;  // fast steps abandoned after max halvings
};

struct Trajectory
{
    std::vector<Snapshot> samples;
    FlowState final;
    RunStats stats;
    std::vector<SeparationRecord> separation;
    std::string stop_reason;
    std::vector<std::string> warnings;
};

struct FastStepResult
{
    bool accepted = true;
    int halvings = 0;
    double pattern_before = 0.0;
    double pattern_after = 0.0;
};

inline constexpr int max_step_halvings = 30;
inline constexpr double descent_tolerance = 1e-12;

/*!
One explicit step of eps a' = -sum_i grad_a Phi_i, eps alpha' = -sum_i grad_alpha Phi_i
with rate h_f / eps, amplitudes projected onto a >= 0 afterwards. A trial
that raises sum_i Phi_i by more than descent_tolerance is halved and
retried up to max_step_halvings times; if none is accepted the state is
left unchanged and the result is flagged.
!*/
FastStepResult fast_step(FlowState &state, const Scenario &scenario);

// Same as fast_step against a pre-built model for the current positions.
FastStepResult fast_step(FlowState &state, const Scenario &scenario, const FastPatternModel &model);

struct SlowStepResult
{
    double position_gradient_norm = 0.0;  // at the pre-step state
};

/*!
r_m' = r_m + h_s (-sum_i grad_r Phi_i + v_m)
v_m' = v_m - h_s 2 S_m (r_m - r_m(t0))
Both right-hand sides use the pre-step state. In RK4 mode the (r, v) pair is
integrated jointly with amplitudes and phases frozen. Does not advance t.
!*/
SlowStepResult slow_step(FlowState &state, const Scenario &scenario);

// ||g_a|| + ||g_alpha||, leaving out amplitude components held at zero by
// the projection (a_m = 0 with the flow pushing a_m negative).
double fast_gradient_norm(const std::vector<AgentState> &agents, const std::vector<double> &g_a,
                          const std::vector<double> &g_alpha);

struct StopDecision
{
    bool stop = false;
    std::string reason;  // "converged" | "horizon" | ""
};

struct StoppingInputs
{
    double t = 0.0;
    double fast_norm = 0.0;      // fast_gradient_norm
    double position_norm = 0.0;  // ||g_r||
    double max_motion_aux = 0.0; // max_m ||v_m||
};

StopDecision stopping_rule(const StoppingInputs &in, const Scenario &scenario);
StopDecision stopping_rule(const FlowState &state, const Scenario &scenario);

struct IntegrateOptions
{
    std::size_t snapshot_stride = 1;  // in slow steps
};

/*!
Runs the coupled system on a shared clock: each slow step of size h_s is
preceded by round(h_s / h_f) fast steps, until the stopping rule fires.
Snapshots are taken at t = 0, every snapshot_stride slow steps, and at the
end. Deterministic for a fixed scenario.
!*/
Trajectory integrate(const Scenario &scenario, const IntegrateOptions &options = {});

std::size_t fast_steps_per_slow_step(const Scenario &scenario);

} // namespace beamflow
