// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#include "beamflow/gradients.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace beamflow
{

namespace
{

double norm2(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

struct Projection
{
    double au;
    double av;
    double magnitude;
};

Projection project(std::span<const double> a, const PhasorBasis &basis)
{
    auto af = af_complex(a, basis);
    return {af.real(), af.imag(), std::hypot(af.real(), af.imag())};
}

// residual / max(|AF|, floor)
double residual_weight(const Projection &p, double desired)
{
    return (p.magnitude - desired) / std::max(p.magnitude, magnitude_floor(desired));
}

} // namespace

double GradientBundle::amplitude_norm() const { return norm2(amplitude); }
double GradientBundle::phase_norm() const { return norm2(phase); }
double GradientBundle::position_norm() const
{
    double s = 0.0;
    for (auto g : position)
        s += g.dot(g);
    return std::sqrt(s);
}

std::vector<double> grad_amplitude(std::span<const double> a, const PhasorBasis &basis, double desired)
{
    assert(a.size() == basis.size());
    auto p = project(a, basis);
    double w = residual_weight(p, desired);
    std::vector<double> g(a.size());
    for (std::size_t m = 0; m < a.size(); ++m)
        g[m] = w * (p.au * basis.u[m] + p.av * basis.v[m]);
    return g;
}

std::vector<double> grad_phase(std::span<const double> a, const PhasorBasis &basis, double desired)
{
    assert(a.size() == basis.size());
    auto p = project(a, basis);
    double w = residual_weight(p, desired);
    std::vector<double> g(a.size());
    for (std::size_t m = 0; m < a.size(); ++m)
        g[m] = w * (-p.au * (a[m] * basis.v[m]) + p.av * (a[m] * basis.u[m]));
    return g;
}

PositionPartials position_partials(const AgentState &agent, SamplePoint point, const Propagation &prop)
{
    const double k = prop.constants.wave_number;
    const double mu = prop.constants.path_loss_exponent;
    const double ct = std::cos(point.theta);
    const double st = std::sin(point.theta);

    const double ex = agent.position.x - point.rho * ct;
    const double ey = agent.position.y - point.rho * st;
    const double raw = std::hypot(ex, ey);
    const bool clamped = raw < prop.min_distance;
    const double d = clamped ? prop.min_distance : raw;

    const double phase = agent.phase + k * agent.position.x * ct + k * agent.position.y * st + k * d;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const double ag = agent.amplitude * agent.gain;
    const double decay = std::pow(d, -0.5 * mu);

    // -mu a gamma (2 e) / (4 d^{mu/2 + 2}); zero while clamped
    double amp_x = 0.0;
    double amp_y = 0.0;
    double dd_x = 0.0;
    double dd_y = 0.0;
    if (!clamped)
    {
        const double amp_scale = -mu * ag * decay / (4.0 * d * d);
        amp_x = amp_scale * 2.0 * ex;
        amp_y = amp_scale * 2.0 * ey;
        dd_x = k * 2.0 * ex / (2.0 * d);
        dd_y = k * 2.0 * ey / (2.0 * d);
    }
    const double phase_x = k * ct + dd_x;
    const double phase_y = k * st + dd_y;

    PositionPartials out;
    out.du.x = amp_x * c - ag * s * phase_x * decay;
    out.du.y = amp_y * c - ag * s * phase_y * decay;
    out.dv.x = amp_x * s + ag * c * phase_x * decay;
    out.dv.y = amp_y * s + ag * c * phase_y * decay;
    return out;
}

Vec2 grad_position(std::span<const double> a, const PhasorBasis &basis, double desired,
                   const PositionPartials &partials)
{
    auto p = project(a, basis);
    double w = residual_weight(p, desired);
    return {w * (p.au * partials.du.x + p.av * partials.dv.x), w * (p.au * partials.du.y + p.av * partials.dv.y)};
}

Vec2 grad_position(std::span<const double> a, const PhasorBasis &basis, double desired, std::size_t m,
                   const std::vector<AgentState> &agents, SamplePoint point, const Propagation &prop)
{
    return grad_position(a, basis, desired, position_partials(agents[m], point, prop));
}

GradientBundle pattern_gradient(const std::vector<AgentState> &agents, const SampleGrid &grid,
                                const Propagation &prop)
{
    const std::size_t s = agents.size();
    const auto a = amplitudes_of(agents);
    GradientBundle out(s);
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const auto point = grid.points[i];
        const double f = grid.desired[i];
        auto basis = phasor_basis(agents, point, prop);
        auto p = project(a, basis);
        double w = residual_weight(p, f);
        for (std::size_t m = 0; m < s; ++m)
        {
            out.amplitude[m] += w * (p.au * basis.u[m] + p.av * basis.v[m]);
            out.phase[m] += w * (-p.au * (a[m] * basis.v[m]) + p.av * (a[m] * basis.u[m]));
            auto part = position_partials(agents[m], point, prop);
            out.position[m] += Vec2{w * (p.au * part.du.x + p.av * part.dv.x), w * (p.au * part.du.y + p.av * part.dv.y)};
        }
    }
    return out;
}

std::vector<double> fd_gradient(const std::function<double(std::span<const double>)> &f,
                                std::span<const double> x, double step)
{
    std::vector<double> probe(x.begin(), x.end());
    std::vector<double> g(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
    {
        const double h = step * (1.0 + std::abs(x[j]));
        probe[j] = x[j] + h;
        const double up = f(probe);
        probe[j] = x[j] - h;
        const double down = f(probe);
        probe[j] = x[j];
        g[j] = (up - down) / (2.0 * h);
    }
    return g;
}

FastPatternModel::FastPatternModel(const std::vector<AgentState> &agents, const SampleGrid &grid,
                                   const Propagation &prop)
    : agents_(agents.size()), grid_(&grid)
{
    const double k = prop.constants.wave_number;
    const double mu = prop.constants.path_loss_exponent;
    gain_.resize(grid.size() * agents_);
    zeta_.resize(grid.size() * agents_);
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const auto pt = grid.points[i];
        for (std::size_t m = 0; m < agents_; ++m)
        {
            const auto &ag = agents[m];
            double d = distance(ag.position, pt.rho, pt.theta, prop.min_distance);
            gain_[i * agents_ + m] = channel_gain(ag.gain, d, mu);
            zeta_[i * agents_ + m] = k * ag.position.x * std::cos(pt.theta) + k * ag.position.y * std::sin(pt.theta) + k * d;
        }
    }
}

double FastPatternModel::value(std::span<const double> a, std::span<const double> alpha) const
{
    double sum = 0.0;
    for (std::size_t i = 0; i < grid_->size(); ++i)
    {
        double au = 0.0;
        double av = 0.0;
        for (std::size_t m = 0; m < agents_; ++m)
        {
            const double g = gain_[i * agents_ + m];
            const double ph = alpha[m] + zeta_[i * agents_ + m];
            au += a[m] * g * std::cos(ph);
            av += a[m] * g * std::sin(ph);
        }
        const double r = grid_->desired[i] - std::hypot(au, av);
        sum += 0.5 * r * r;
    }
    return sum;
}

double FastPatternModel::gradient(std::span<const double> a, std::span<const double> alpha, std::span<double> g_a,
                                  std::span<double> g_alpha) const
{
    std::fill(g_a.begin(), g_a.end(), 0.0);
    std::fill(g_alpha.begin(), g_alpha.end(), 0.0);
    std::vector<double> u(agents_);
    std::vector<double> v(agents_);
    double sum = 0.0;
    for (std::size_t i = 0; i < grid_->size(); ++i)
    {
        double au = 0.0;
        double av = 0.0;
        for (std::size_t m = 0; m < agents_; ++m)
        {
            const double g = gain_[i * agents_ + m];
            const double ph = alpha[m] + zeta_[i * agents_ + m];
            u[m] = g * std::cos(ph);
            v[m] = g * std::sin(ph);
            au += a[m] * u[m];
            av += a[m] * v[m];
        }
        const double f = grid_->desired[i];
        const double mag = std::hypot(au, av);
        const double w = (mag - f) / std::max(mag, magnitude_floor(f));
        sum += 0.5 * (f - mag) * (f - mag);
        for (std::size_t m = 0; m < agents_; ++m)
        {
            g_a[m] += w * (au * u[m] + av * v[m]);
            g_alpha[m] += w * (-au * (a[m] * v[m]) + av * (a[m] * u[m]));
        }
    }
    return sum;
}

} // namespace beamflow
