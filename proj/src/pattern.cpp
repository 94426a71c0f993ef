// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#include "beamflow/pattern.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "beamflow/array_factor.hpp"

namespace beamflow
{

std::vector<SamplePoint> GridSpec::points() const
{
    std::vector<SamplePoint> pts;
    pts.reserve(size());
    for (double rho : rhos)
        for (double theta : thetas)
            pts.push_back({rho, theta});
    return pts;
}

std::vector<Vec2> make_esla(std::size_t n, double spacing)
{
    if (n == 0 || !(spacing > 0.0))
        throw std::invalid_argument("make_esla: need n >= 1 and spacing > 0");
    std::vector<Vec2> pos(n);
    const double centre = 0.5 * static_cast<double>(n - 1);
    for (std::size_t m = 0; m < n; ++m)
        pos[m] = {(static_cast<double>(m) - centre) * spacing, 0.0};
    return pos;
}

std::vector<double> binomial_taper(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("binomial_taper: need n >= 1");
    std::vector<double> row{1.0};
    for (std::size_t r = 1; r < n; ++r)
    {
        std::vector<double> next(r + 1, 1.0);
        for (std::size_t m = 1; m < r; ++m)
            next[m] = row[m - 1] + row[m];
        row = std::move(next);
    }
    return row;
}

GridSpec make_grid(std::size_t theta_count, std::vector<double> rhos)
{
    if (theta_count == 0)
        throw std::invalid_argument("make_grid: theta_count must be >= 1");
    GridSpec g;
    g.thetas.resize(theta_count);
    for (std::size_t j = 0; j < theta_count; ++j)
        g.thetas[j] = two_pi * static_cast<double>(j) / static_cast<double>(theta_count);
    g.rhos = std::move(rhos);
    check_grid_spec(g);
    return g;
}

void check_pattern_spec(const DesiredPatternSpec &spec)
{
    const std::size_t n = spec.positions.size();
    if (n == 0)
        throw std::invalid_argument("pattern spec: need at least one element");
    if (spec.amplitudes.size() != n)
        throw std::invalid_argument("pattern spec: amplitude count does not match element count");
    if (!spec.gains.empty() && spec.gains.size() != n)
        throw std::invalid_argument("pattern spec: gain count does not match element count");
    for (double a : spec.amplitudes)
        if (!(a >= 0.0) || !std::isfinite(a))
            throw std::invalid_argument("pattern spec: amplitudes must be finite and non-negative");
    for (double g : spec.gains)
        if (!(g > 0.0) || !std::isfinite(g))
            throw std::invalid_argument("pattern spec: gains must be positive");
    if (!(spec.path_loss_exponent >= 0.0))
        throw std::invalid_argument("pattern spec: path loss exponent must be non-negative");
    if (!std::isfinite(spec.phase_gradient))
        throw std::invalid_argument("pattern spec: phase gradient must be finite");
}

void check_grid_spec(const GridSpec &grid)
{
    if (grid.thetas.empty() || grid.rhos.empty())
        throw std::invalid_argument("grid spec: theta and rho lists must be non-empty");
    for (std::size_t j = 0; j < grid.thetas.size(); ++j)
    {
        if (!(grid.thetas[j] >= 0.0 && grid.thetas[j] < two_pi))
            throw std::invalid_argument("grid spec: theta outside [0, 2pi)");
        if (j > 0 && !(grid.thetas[j] > grid.thetas[j - 1]))
            throw std::invalid_argument("grid spec: thetas must be strictly increasing");
    }
    for (std::size_t j = 0; j < grid.rhos.size(); ++j)
    {
        if (!(grid.rhos[j] > 0.0) || !std::isfinite(grid.rhos[j]))
            throw std::invalid_argument("grid spec: rho must be positive");
        if (j > 0 && !(grid.rhos[j] > grid.rhos[j - 1]))
            throw std::invalid_argument("grid spec: rhos must be strictly increasing");
    }
}

double desired_magnitude(const DesiredPatternSpec &spec, SamplePoint point, double wave_number,
                         double min_distance)
{
    const double ct = std::cos(point.theta);
    const double st = std::sin(point.theta);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t m = 0; m < spec.positions.size(); ++m)
    {
        const Vec2 r = spec.positions[m];
        double phase = static_cast<double>(m) * spec.phase_gradient + wave_number * (r.x * ct + r.y * st);
        double weight = spec.amplitudes[m];
        if (spec.mode == PatternMode::channel_aware)
        {
            const double gain = spec.gains.empty() ? 1.0 : spec.gains[m];
            const double d = distance(r, point.rho, point.theta, min_distance);
            weight *= channel_gain(gain, d, spec.path_loss_exponent);
            phase += wave_number * d;
        }
        sum += weight * std::polar(1.0, phase);
    }
    return std::abs(sum);
}

SampleGrid desired_pattern(const DesiredPatternSpec &spec, const GridSpec &grid, double wave_number,
                           double min_distance)
{
    check_pattern_spec(spec);
    check_grid_spec(grid);
    SampleGrid out;
    out.points = grid.points();
    out.desired.reserve(out.points.size());
    for (const auto &p : out.points)
        out.desired.push_back(desired_magnitude(spec, p, wave_number, min_distance));
    return out;
}

} // namespace beamflow
