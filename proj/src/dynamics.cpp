// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#include "beamflow/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "beamflow/objective.hpp"

namespace beamflow
{

namespace
{

double norm2(const std::vector<double> &v)
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

std::vector<Vec2> position_gradient(const std::vector<AgentState> &agents, const SampleGrid &grid,
                                    const Propagation &prop)
{
    const auto a = amplitudes_of(agents);
    std::vector<Vec2> g(agents.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        auto basis = phasor_basis(agents, grid.points[i], prop);
        for (std::size_t m = 0; m < agents.size(); ++m)
            g[m] += grad_position(a, basis, grid.desired[i], position_partials(agents[m], grid.points[i], prop));
    }
    return g;
}

double max_motion_aux(const std::vector<AgentState> &agents)
{
    double v = 0.0;
    for (const auto &ag : agents)
        v = std::max(v, ag.motion_aux.norm());
    return v;
}

struct FastTrial
{
    std::vector<double> a;
    std::vector<double> alpha;
};

// Direction -sum_i grad Phi_i integrated over one step of the given rate.
FastTrial fast_trial(const std::vector<double> &a, const std::vector<double> &alpha, double rate,
                     Integrator kind, const FastPatternModel &model, const std::vector<double> &g_a,
                     const std::vector<double> &g_alpha)
{
    const std::size_t s = a.size();
    FastTrial out{a, alpha};
    if (kind == Integrator::euler)
    {
        for (std::size_t m = 0; m < s; ++m)
        {
            out.a[m] = a[m] - rate * g_a[m];
            out.alpha[m] = alpha[m] - rate * g_alpha[m];
        }
    }
    else
    {
        std::vector<double> ka[4], kp[4];
        ka[0] = g_a;
        kp[0] = g_alpha;
        std::vector<double> ta(s), tp(s);
        const double stage[3] = {0.5, 0.5, 1.0};
        for (int j = 1; j < 4; ++j)
        {
            for (std::size_t m = 0; m < s; ++m)
            {
                ta[m] = a[m] - stage[j - 1] * rate * ka[j - 1][m];
                tp[m] = alpha[m] - stage[j - 1] * rate * kp[j - 1][m];
            }
            ka[j].assign(s, 0.0);
            kp[j].assign(s, 0.0);
            model.gradient(ta, tp, ka[j], kp[j]);
        }
        for (std::size_t m = 0; m < s; ++m)
        {
            out.a[m] = a[m] - rate / 6.0 * (ka[0][m] + 2.0 * ka[1][m] + 2.0 * ka[2][m] + ka[3][m]);
            out.alpha[m] = alpha[m] - rate / 6.0 * (kp[0][m] + 2.0 * kp[1][m] + 2.0 * kp[2][m] + kp[3][m]);
        }
    }
    for (auto &x : out.a)
        x = std::max(x, 0.0);
    return out;
}

} // namespace

double fast_gradient_norm(const std::vector<AgentState> &agents, const std::vector<double> &g_a,
                          const std::vector<double> &g_alpha)
{
    double sq = 0.0;
    for (std::size_t m = 0; m < agents.size(); ++m)
        if (!(agents[m].amplitude == 0.0 && g_a[m] > 0.0))
            sq += g_a[m] * g_a[m];
    return std::sqrt(sq) + norm2(g_alpha);
}

FlowState FlowState::initial(const Scenario &scenario)
{
    FlowState st;
    st.t = 0.0;
    st.agents = scenario.agents;
    st.motion_term = 0.0;
    st.motion_integrand = beamflow::motion_integrand(st.agents, scenario.penalties);
    return st;
}

std::size_t fast_steps_per_slow_step(const Scenario &scenario)
{
    auto n = static_cast<long long>(std::llround(scenario.slow_step / scenario.fast_step));
    return static_cast<std::size_t>(std::max(1LL, n));
}

FastStepResult fast_step(FlowState &state, const Scenario &scenario, const FastPatternModel &model)
{
    const std::size_t s = state.agents.size();
    auto a = amplitudes_of(state.agents);
    auto alpha = phases_of(state.agents);
    std::vector<double> g_a(s), g_alpha(s);

    FastStepResult res;
    res.pattern_before = model.gradient(a, alpha, g_a, g_alpha);
    res.pattern_after = res.pattern_before;

    double rate = scenario.fast_step / scenario.epsilon;
    for (int attempt = 0; attempt <= max_step_halvings; ++attempt)
    {
        auto trial = fast_trial(a, alpha, rate, scenario.integrator, model, g_a, g_alpha);
        double value = model.value(trial.a, trial.alpha);
        if (value <= res.pattern_before + descent_tolerance)
        {
            for (std::size_t m = 0; m < s; ++m)
            {
                state.agents[m].amplitude = trial.a[m];
                state.agents[m].phase = trial.alpha[m];
            }
            res.accepted = true;
            res.pattern_after = value;
            return res;
        }
        if (attempt < max_step_halvings)
        {
            rate *= 0.5;
            ++res.halvings;
        }
    }
    res.accepted = false;
    return res;
}

FastStepResult fast_step(FlowState &state, const Scenario &scenario)
{
    FastPatternModel model(state.agents, scenario.grid, scenario.propagation());
    return fast_step(state, scenario, model);
}

SlowStepResult slow_step(FlowState &state, const Scenario &scenario)
{
    const auto prop = scenario.propagation();
    const auto &S = scenario.penalties.per_agent;
    const std::size_t s = state.agents.size();
    const double h = scenario.slow_step;

    auto g = position_gradient(state.agents, scenario.grid, prop);
    SlowStepResult res;
    {
        double sq = 0.0;
        for (auto v : g)
            sq += v.dot(v);
        res.position_gradient_norm = std::sqrt(sq);
    }

    if (scenario.integrator == Integrator::euler)
    {
        for (std::size_t m = 0; m < s; ++m)
        {
            auto &ag = state.agents[m];
            const Vec2 r = ag.position;
            const Vec2 v = ag.motion_aux;
            ag.position = r + h * (Vec2{-g[m].x, -g[m].y} + v);
            ag.motion_aux = v - h * (2.0 * (S[m] * (r - ag.anchor)));
        }
        return res;
    }

    // Classical RK4 on (r, v) with amplitudes and phases frozen.
    struct Deriv
    {
        std::vector<Vec2> dr, dv;
    };
    auto rhs = [&](const std::vector<AgentState> &agents, const std::vector<Vec2> *known_grad) {
        Deriv d{std::vector<Vec2>(s), std::vector<Vec2>(s)};
        auto grad = known_grad ? *known_grad : position_gradient(agents, scenario.grid, prop);
        for (std::size_t m = 0; m < s; ++m)
        {
            d.dr[m] = Vec2{-grad[m].x, -grad[m].y} + agents[m].motion_aux;
            d.dv[m] = -1.0 * (2.0 * (S[m] * (agents[m].position - agents[m].anchor)));
        }
        return d;
    };
    auto shifted = [&](const Deriv &d, double scale) {
        auto agents = state.agents;
        for (std::size_t m = 0; m < s; ++m)
        {
            agents[m].position += scale * d.dr[m];
            agents[m].motion_aux += scale * d.dv[m];
        }
        return agents;
    };
    Deriv k1 = rhs(state.agents, &g);
    Deriv k2 = rhs(shifted(k1, 0.5 * h), nullptr);
    Deriv k3 = rhs(shifted(k2, 0.5 * h), nullptr);
    Deriv k4 = rhs(shifted(k3, h), nullptr);
    for (std::size_t m = 0; m < s; ++m)
    {
        auto &ag = state.agents[m];
        ag.position += (h / 6.0) * (k1.dr[m] + 2.0 * k2.dr[m] + 2.0 * k3.dr[m] + k4.dr[m]);
        ag.motion_aux += (h / 6.0) * (k1.dv[m] + 2.0 * k2.dv[m] + 2.0 * k3.dv[m] + k4.dv[m]);
    }
    return res;
}

StopDecision stopping_rule(const StoppingInputs &in, const Scenario &scenario)
{
    if (in.fast_norm < scenario.tol_fast && in.position_norm < scenario.tol_slow &&
        in.max_motion_aux < scenario.tol_slow)
        return {true, "converged"};
    // t is a multiple of h_s; the slack absorbs rounding in horizon / h_s.
    if (in.t >= scenario.horizon - 1e-9 * scenario.slow_step)
        return {true, "horizon"};
    return {false, ""};
}

StopDecision stopping_rule(const FlowState &state, const Scenario &scenario)
{
    auto g = pattern_gradient(state.agents, scenario.grid, scenario.propagation());
    return stopping_rule({state.t, fast_gradient_norm(state.agents, g.amplitude, g.phase), g.position_norm(),
                          max_motion_aux(state.agents)},
                         scenario);
}

Trajectory integrate(const Scenario &scenario, const IntegrateOptions &options)
{
    const auto prop = scenario.propagation();
    const std::size_t s = scenario.agents.size();
    const std::size_t n_fast = fast_steps_per_slow_step(scenario);
    const std::size_t stride = std::max<std::size_t>(1, options.snapshot_stride);

    Trajectory traj;
    FlowState state = FlowState::initial(scenario);

    auto snapshot = [&](const ObjectiveValue &obj) { traj.samples.push_back({state.t, state.agents, obj}); };

    auto record = [&](const GradientBundle &g) {
        ObjectiveValue obj = objective(state.agents, scenario, state.motion_term);
        state.objective_history.push_back({state.t, obj});
        state.gradient_norm_history.push_back({state.t, g.amplitude_norm(), g.phase_norm(), g.position_norm()});
        return obj;
    };

    GradientBundle g = pattern_gradient(state.agents, scenario.grid, prop);
    snapshot(record(g));

    std::vector<double> g_a(s), g_alpha(s);
    bool snapshot_current = true;
    for (;;)
    {
        StopDecision stop = stopping_rule(
            {state.t, fast_gradient_norm(state.agents, g.amplitude, g.phase), g.position_norm(), max_motion_aux(state.agents)},
            scenario);
        if (stop.stop)
        {
            traj.stop_reason = stop.reason;
            break;
        }

        FastPatternModel model(state.agents, scenario.grid, prop);
        SeparationRecord sep;
        sep.fast_norm_start = fast_gradient_norm(state.agents, g.amplitude, g.phase);
        for (std::size_t j = 0; j < n_fast; ++j)
        {
            auto r = fast_step(state, scenario, model);
            ++traj.stats.fast_steps;
            traj.stats.rejected_steps += static_cast<std::size_t>(r.halvings);
            if (!r.accepted)
                ++traj.stats.descent_failures;
        }
        {
            auto a = amplitudes_of(state.agents);
            auto alpha = phases_of(state.agents);
            model.gradient(a, alpha, g_a, g_alpha);
            sep.fast_norm_end = fast_gradient_norm(state.agents, g_a, g_alpha);
        }

        slow_step(state, scenario);
        ++traj.stats.slow_steps;
        state.t = static_cast<double>(traj.stats.slow_steps) * scenario.slow_step;
        sep.t = state.t;
        traj.separation.push_back(sep);

        double integrand = motion_integrand(state.agents, scenario.penalties);
        state.motion_term += 0.5 * scenario.slow_step * (state.motion_integrand + integrand);
        state.motion_integrand = integrand;

        g = pattern_gradient(state.agents, scenario.grid, prop);
        ObjectiveValue obj = record(g);
        snapshot_current = traj.stats.slow_steps % stride == 0;
        if (snapshot_current)
            snapshot(obj);
    }
    if (!snapshot_current)
        snapshot(state.objective_history.back().value);

    if (traj.stats.descent_failures > 0)
        traj.warnings.push_back("fast flow failed to descend after " + std::to_string(max_step_halvings) +
                                " halvings on " + std::to_string(traj.stats.descent_failures) + " steps");
    traj.final = std::move(state);
    return traj;
}

} // namespace beamflow
