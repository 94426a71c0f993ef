// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace beamflow::cli
{

// Stable process exit codes.
enum ExitCode : int
{
    success = 0,
    validation_error = 1,
    io_error = 2,
    gradient_check_failure = 3
};

// Entry point for `beamflow <command> ...`; args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace beamflow::cli
