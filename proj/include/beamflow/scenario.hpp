// SPDX-License-Identifier: Apache-2.0
//
// beamflow: two time-scale gradient flows for distributed beamforming
// with mobile agents.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "beamflow/types.hpp"

namespace beamflow
{

struct ValidationReport
{
    std::vector<std::string> errors;
    std::vector<std::string> warnings;

    bool ok() const { return errors.empty(); }
    std::string to_string() const;
};

class ValidationError : public std::invalid_argument
{
  public:
    explicit ValidationError(ValidationReport report);
    const ValidationReport &report() const { return report_; }

  private:
    ValidationReport report_;
};

// Collects every violated invariant; epsilon > 0.1 is a warning only.
ValidationReport check_scenario(const Scenario &s);

// Returns the scenario unchanged when valid, throws ValidationError otherwise.
Scenario validate_scenario(Scenario s);

} // namespace beamflow
