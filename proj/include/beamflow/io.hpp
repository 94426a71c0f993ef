// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "beamflow/dynamics.hpp"
#include "beamflow/types.hpp"

namespace beamflow
{

// File could not be opened, read or written.
class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Content is malformed. row is 1-based and counts the header, 0 if unknown.
class ParseError : public std::runtime_error
{
  public:
    ParseError(const std::string &what, std::size_t row = 0);
    std::size_t row() const { return row_; }

  private:
    std::size_t row_;
};

// 17 significant digits, shortest round-trip form.
std::string format_number(double x);
double parse_number(const std::string &text, std::size_t row = 0);

/*!
Scenario files are INI-style key/value text:

    [constants]     frequency, path_loss_exponent
    [integration]   epsilon, slow_step, fast_step, horizon, seed, min_distance,
                    integrator (euler | rk4), tol_fast, tol_slow
    [agents]        count, init (random | explicit), init_side or
                    init_side_wavelengths, gain_mode
                    (unit | rayleigh), penalty ("sxx sxy syy"),
                    agent0 .. agentN ("a alpha x y [gamma]") for explicit init
    [grid]          theta_count, rho or rho_wavelengths (space/comma separated)
    [target]        mode (far-field | channel-aware | file), elements,
                    spacing or spacing_wavelengths, taper (binomial | uniform),
                    phase_gradient, path_loss, file

Comments start with ';' or '#'. A relative target file is resolved against
the scenario file's directory. Unset keys take the reference defaults.
!*/
// seed_override replaces [integration] seed before agents are drawn.
Scenario parse_scenario(std::istream &in, const std::filesystem::path &base_dir = {},
                        std::optional<std::uint64_t> seed_override = std::nullopt);
Scenario load_scenario(const std::filesystem::path &path, std::optional<std::uint64_t> seed_override = std::nullopt);

// Rows "rho,theta,magnitude" (plus ",achieved" when given) in grid order.
struct PatternTable
{
    std::vector<SamplePoint> points;
    std::vector<double> magnitude;
    std::vector<double> achieved;  // empty when the file has no achieved column

    SampleGrid grid() const { return {points, magnitude}; }
};

void write_pattern_csv(std::ostream &out, const SampleGrid &grid, const std::vector<double> *achieved = nullptr);
PatternTable read_pattern_csv(std::istream &in);

struct TrajectoryRow
{
    double t = 0.0;
    std::size_t agent = 0;
    double amplitude = 0.0;
    double phase = 0.0;  // wrapped to [0, 2pi)
    Vec2 position;
    Vec2 motion_aux;

    friend bool operator==(const TrajectoryRow &, const TrajectoryRow &) = default;
};

std::vector<TrajectoryRow> trajectory_rows(const Trajectory &traj);
void write_trajectory_csv(std::ostream &out, const std::vector<TrajectoryRow> &rows);
std::vector<TrajectoryRow> read_trajectory_csv(std::istream &in);

// Achieved |AF| at every grid point.
std::vector<double> achieved_pattern(const std::vector<AgentState> &agents, const Scenario &scenario);

struct RunSummary
{
    ObjectiveValue initial;
    ObjectiveValue final;
    double wall_time = 0.0;  // s
    RunStats stats;
    std::string stop_reason;
    std::vector<AgentState> final_agents;
    std::vector<std::string> warnings;
    std::uint64_t seed = 0;
    double final_time = 0.0;
};

RunSummary summarize(const Trajectory &traj, const Scenario &scenario, double wall_time);
// Wall time is left out by default so repeated runs produce identical files.
nlohmann::json to_json(const RunSummary &summary, bool include_wall_time = false);

// Long-format plotting tables.
struct PolarRow
{
    double theta;
    double desired;
    double initial;
    double final;
};

// Picks the ring whose rho is closest to `rho` (first ring if unset).
// Throws ParseError("grid mismatch") if the two tables differ in grid.
std::vector<PolarRow> polar_rows(const PatternTable &initial, const PatternTable &final,
                                 std::optional<double> rho = std::nullopt);
void write_polar_csv(std::ostream &out, const std::vector<PolarRow> &rows);

// Throws ParseError("no samples") on an empty trajectory.
void write_evolution_csv(std::ostream &out, const std::vector<TrajectoryRow> &rows);

} // namespace beamflow
