// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "beamflow/types.hpp"

namespace beamflow
{

/*!
Per-sample phasor decomposition of the channel-aware array factor.

For agent m and sample point i:
    u[m] = gamma_m * d_mi^{-mu/2} * cos(alpha_m + zeta_mi)
    v[m] = gamma_m * d_mi^{-mu/2} * sin(alpha_m + zeta_mi)
so that AF_i = a.u + j a.v and |AF_i| = sqrt((a.u)^2 + (a.v)^2).
Amplitudes a_m are not part of u, v.
!*/
struct PhasorBasis
{
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> d;     // clamped distances; 0 for far-field bases
    std::vector<double> zeta;  // geometric phase k x cos + k y sin (+ k d)

    std::size_t size() const { return u.size(); }
};

// |position - rho (cos theta, sin theta)|, floored at min_distance.
double distance(Vec2 position, double rho, double theta, double min_distance);

// k x cos(theta) + k y sin(theta) + k * distance(...)
double zeta(Vec2 position, double rho, double theta, double wave_number, double min_distance);

// gamma_m * d^{-mu/2}
double channel_gain(double gain, double d, double path_loss_exponent);

PhasorBasis phasor_basis(const std::vector<AgentState> &agents, SamplePoint point, const Propagation &prop);

// Plane-wave form: no path loss and no k*d phase. zeta holds k r.rhat only.
PhasorBasis far_field_basis(const std::vector<AgentState> &agents, double theta, double wave_number);

double af_magnitude(std::span<const double> amplitudes, const PhasorBasis &basis);

// (a.u, a.v) as a complex number.
std::complex<double> af_complex(std::span<const double> amplitudes, const PhasorBasis &basis);
std::complex<double> af_complex(const std::vector<AgentState> &agents, SamplePoint point, const Propagation &prop);

} // namespace beamflow
