# SPDX-License-Identifier: Apache-2.0
#
# beamflow: two time-scale gradient flows for distributed beamforming
# with mobile agents.
# ------------------------------------------------------------------------
"""Beam pattern reconstruction with mobile agents."""

from ._core import (
    Agent,
    Integrator,
    IoError,
    ObjectiveValue,
    ParseError,
    PatternMode,
    PhysicalConstants,
    RunStats,
    SamplePoint,
    Scenario,
    Snapshot,
    SymMat2,
    Trajectory,
    ValidationError,
    Vec2,
    achieved_pattern,
    array_factor,
    check_gradients,
    desired_pattern,
    integrate,
    load_scenario,
    parse_scenario,
    pattern_gradient,
    pattern_term,
    reference_scenario,
    run_cli,
)

__version__ = "0.1.0"
