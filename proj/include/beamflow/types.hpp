// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace beamflow
{

inline constexpr double speed_of_light = 299792458.0; // m/s
inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Vec2
{
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;

    constexpr Vec2 &operator+=(Vec2 b)
    {
        x += b.x;
        y += b.y;
        return *this;
    }

    constexpr double dot(Vec2 b) const { return x * b.x + y * b.y; }
    double norm() const { return std::hypot(x, y); }
};

// Symmetric 2x2 matrix [xx xy; xy yy].
struct SymMat2
{
    double xx = 1.0;
    double xy = 0.0;
    double yy = 1.0;

    static constexpr SymMat2 identity() { return {1.0, 0.0, 1.0}; }
    static constexpr SymMat2 scaled_identity(double s) { return {s, 0.0, s}; }

    constexpr Vec2 operator*(Vec2 r) const { return {xx * r.x + xy * r.y, xy * r.x + yy * r.y}; }
    constexpr double quadratic(Vec2 r) const { return r.dot(*this * r); }
    constexpr double determinant() const { return xx * yy - xy * xy; }
    constexpr double trace() const { return xx + yy; }
    constexpr bool positive_definite() const { return determinant() > 0.0 && trace() > 0.0; }
    double max_eigenvalue() const
    {
        double half_gap = std::hypot(0.5 * (xx - yy), xy);
        return 0.5 * (xx + yy) + half_gap;
    }
    friend constexpr bool operator==(const SymMat2 &, const SymMat2 &) = default;
};

struct PhysicalConstants
{
    double frequency = 40e6;          // Hz
    double wavelength = 0.0;          // m
    double wave_number = 0.0;         // rad/m
    double path_loss_exponent = 2.0;  // mu

    static PhysicalConstants from_frequency(double frequency_hz, double path_loss_exponent = 2.0)
    {
        PhysicalConstants c;
        c.frequency = frequency_hz;
        c.wavelength = speed_of_light / frequency_hz;
        c.wave_number = two_pi / c.wavelength;
        c.path_loss_exponent = path_loss_exponent;
        return c;
    }
};

// Constants plus the distance floor that keeps d^{-mu/2} and the gradient
// denominators finite when an agent sits on a sample point.
struct Propagation
{
    PhysicalConstants constants;
    double min_distance = 0.0;

    static double default_min_distance(const PhysicalConstants &c) { return 1e-3 * c.wavelength; }
};

struct AgentState
{
    double amplitude = 1.0;  // a_m >= 0
    double phase = 0.0;      // alpha_m, unwrapped radians
    double gain = 1.0;       // gamma_m > 0, fixed for a run
    Vec2 position;           // r_m(t)
    Vec2 anchor;             // r_m(t0)
    Vec2 motion_aux;         // v_m(t)

    friend bool operator==(const AgentState &, const AgentState &) = default;
};

struct SamplePoint
{
    double rho = 1.0;    // m
    double theta = 0.0;  // rad in [0, 2pi)

    friend constexpr bool operator==(SamplePoint, SamplePoint) = default;
};

// Discretised (rho, theta) pairs with desired magnitudes f(rho_i, theta_i).
struct SampleGrid
{
    std::vector<SamplePoint> points;
    std::vector<double> desired;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

// One S_m per agent.
struct MotionPenalty
{
    std::vector<SymMat2> per_agent;
};

enum class Integrator
{
    euler,
    rk4
};

struct Scenario
{
    PhysicalConstants constants;
    std::vector<AgentState> agents;
    SampleGrid grid;
    MotionPenalty penalties;
    double epsilon = 0.01;
    double fast_step = 1e-5;   // h_f
    double slow_step = 1e-2;   // h_s
    double horizon = 1.0;
    std::uint64_t rng_seed = 42;
    double min_distance = 0.0; // d_min

    Integrator integrator = Integrator::euler;
    double tol_fast = 1e-8;
    double tol_slow = 1e-8;

    Propagation propagation() const { return {constants, min_distance}; }
};

struct ObjectiveValue
{
    double pattern_term = 0.0;
    double motion_term = 0.0;
    double total = 0.0;

    static ObjectiveValue make(double pattern, double motion) { return {pattern, motion, pattern + motion}; }
};

// Amplitude and phase vectors pulled out of an agent list.
inline std::vector<double> amplitudes_of(const std::vector<AgentState> &agents)
{
    std::vector<double> a(agents.size());
    for (std::size_t m = 0; m < agents.size(); ++m)
        a[m] = agents[m].amplitude;
    return a;
}

inline std::vector<double> phases_of(const std::vector<AgentState> &agents)
{
    std::vector<double> p(agents.size());
    for (std::size_t m = 0; m < agents.size(); ++m)
        p[m] = agents[m].phase;
    return p;
}

// Phase reported in [0, 2pi).
inline double wrap_phase(double alpha)
{
    double w = std::fmod(alpha, two_pi);
    if (w < 0.0)
        w += two_pi;
    if (w >= two_pi)
        w = 0.0;
    return w;
}

} // namespace beamflow
